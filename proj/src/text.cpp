#include <algorithm>
#include <numeric>

#include <rst/text.hpp>

namespace rst {

void validate_text(const text_type& text)
{
  if(text.empty()) { throw std::invalid_argument("text: empty text"); }
  if(text.back() != ENDMARKER) { throw std::invalid_argument("text: missing endmarker"); }
  for(size_type i = 0; i + 1 < text.size(); i++)
  {
    if(text[i] == ENDMARKER) { throw std::invalid_argument("text: endmarker inside the text"); }
  }
}

text_type with_endmarker(const text_type& sequence)
{
  text_type res(sequence);
  res.push_back(ENDMARKER);
  validate_text(res);
  return res;
}

std::vector<size_type> build_suffix_array(const std::vector<symbol_type>& seq)
{
  size_type n = seq.size();
  std::vector<size_type> sa(n), rank(n), next_rank(n);
  std::iota(sa.begin(), sa.end(), 0);
  for(size_type i = 0; i < n; i++) { rank[i] = seq[i]; }

  for(size_type k = 1; ; k *= 2)
  {
    auto key = [&](size_type i) -> std::pair<size_type, size_type>
    {
      return { rank[i], i + k < n ? rank[i + k] + 1 : 0 };
    };
    std::sort(sa.begin(), sa.end(), [&](size_type a, size_type b) { return key(a) < key(b); });
    next_rank[sa[0]] = 0;
    for(size_type i = 1; i < n; i++)
    {
      next_rank[sa[i]] = next_rank[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    }
    rank.swap(next_rank);
    if(rank[sa[n - 1]] == n - 1) { break; }
  }

  for(size_type i = 0; i < n; i++) { sa[i]++; }  // 1-based positions
  return sa;
}

std::vector<size_type> build_lcp_array(const text_type& text,
                                       const std::vector<size_type>& sa,
                                       const std::vector<size_type>& isa)
{
  size_type n = text.size();
  std::vector<size_type> lcp(n, 0);
  size_type match = 0;
  for(size_type p = 1; p <= n; p++)  // text order: PLCP scan
  {
    size_type i = isa[p - 1];
    if(i == 1) { match = 0; continue; }
    size_type q = sa[i - 2];  // previous suffix in lexicographic order
    while(p + match <= n && q + match <= n && text[p + match - 1] == text[q + match - 1]) { match++; }
    lcp[i - 1] = match;
    if(match > 0) { match--; }
  }
  return lcp;
}

suffix_structures build_suffix_structures(const text_type& text)
{
  validate_text(text);
  suffix_structures s;
  s.text = text;
  std::vector<symbol_type> seq(text.begin(), text.end());
  s.sa = build_suffix_array(seq);

  size_type n = text.size();
  s.isa.assign(n, 0);
  for(size_type i = 1; i <= n; i++) { s.isa[s.sa[i - 1] - 1] = i; }

  s.lcp = build_lcp_array(text, s.sa, s.isa);

  s.bwt.assign(n, 0);
  for(size_type i = 1; i <= n; i++)
  {
    size_type p = s.sa[i - 1];
    s.bwt[i - 1] = (p == 1 ? text[n - 1] : text[p - 2]);
  }
  return s;
}

} // namespace rst
