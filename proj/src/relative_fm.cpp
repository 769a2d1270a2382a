#include <algorithm>
#include <bit>
#include <numeric>

#include <rst/relative_fm.hpp>

namespace rst {

/*
 * Block LCS. Hirschberg recursion on top of bit-parallel LCS-length rows:
 * one row pass computes LCS(x, y[1, j]) for every j with the update
 * V = (V + (V & M[c])) | (V - (V & M[c])), where zero bits of V count matched
 * symbols.
 */

namespace {

// row[j] = LCS length of x against y[0, j).
std::vector<size_type> lcs_row(const byte_type* x, size_type m,
                               const byte_type* y, size_type n)
{
  std::vector<size_type> row(n + 1, 0);
  if(m == 0) { return row; }
  size_type words = words_for_bits(m);
  std::vector<std::uint64_t> masks(SIGMA * words, 0);
  for(size_type i = 0; i < m; i++)
  {
    masks[x[i] * words + i / WORD_BITS] |= std::uint64_t(1) << (i % WORD_BITS);
  }
  std::vector<std::uint64_t> v(words, ~std::uint64_t(0));
  std::uint64_t tail =
    (m % WORD_BITS == 0 ? ~std::uint64_t(0) : (std::uint64_t(1) << (m % WORD_BITS)) - 1);
  for(size_type j = 0; j < n; j++)
  {
    const std::uint64_t* mask = masks.data() + std::size_t(y[j]) * words;
    std::uint64_t carry = 0, borrow = 0;
    for(size_type w = 0; w < words; w++)
    {
      std::uint64_t u = v[w] & mask[w];
      std::uint64_t s = v[w] + u;
      std::uint64_t overflow = (s < v[w]);
      std::uint64_t s2 = s + carry;
      carry = overflow | (s2 < s);
      std::uint64_t d = v[w] - u;
      std::uint64_t underflow = (v[w] < u);
      std::uint64_t d2 = d - borrow;
      borrow = underflow | (d < borrow);
      v[w] = s2 | d2;
    }
    size_type zeros = 0;
    for(size_type w = 0; w + 1 < words; w++) { zeros += std::popcount(~v[w]); }
    zeros += std::popcount(~v[words - 1] & tail);
    row[j + 1] = zeros;
  }
  return row;
}

void hirschberg(const byte_type* x, size_type m, size_type xoff,
                const byte_type* y, size_type n, size_type yoff,
                std::vector<std::pair<size_type, size_type>>& out)
{
  if(m == 0 || n == 0) { return; }
  if(m == 1)
  {
    for(size_type j = 0; j < n; j++)
    {
      if(y[j] == x[0]) { out.emplace_back(xoff, yoff + j); return; }
    }
    return;
  }
  size_type h = m / 2;
  std::vector<size_type> fwd = lcs_row(x, h, y, n);
  std::vector<byte_type> xr(x + h, x + m), yr(y, y + n);
  std::reverse(xr.begin(), xr.end());
  std::reverse(yr.begin(), yr.end());
  std::vector<size_type> bwd = lcs_row(xr.data(), m - h, yr.data(), n);
  size_type best = 0, best_j = 0;
  for(size_type j = 0; j <= n; j++)
  {
    if(fwd[j] + bwd[n - j] > best) { best = fwd[j] + bwd[n - j]; best_j = j; }
  }
  if(best == 0) { return; }
  hirschberg(x, h, xoff, y, best_j, yoff, out);
  hirschberg(x + h, m - h, xoff + h, y + best_j, n - best_j, yoff + best_j, out);
}

// Fallback for oversized blocks: merge-style scan pairing equal symbols.
void greedy_pairs(const byte_type* x, size_type m, size_type xoff,
                  const byte_type* y, size_type n, size_type yoff,
                  std::vector<std::pair<size_type, size_type>>& out)
{
  size_type i = 0, j = 0;
  while(i < m && j < n)
  {
    if(x[i] == y[j]) { out.emplace_back(xoff + i, yoff + j); i++; j++; }
    else if(x[i] < y[j]) { i++; }
    else { j++; }
  }
}

} // anonymous namespace

std::vector<std::pair<size_type, size_type>> block_lcs_pairs(
    const std::vector<byte_type>& x, const std::vector<byte_type>& y)
{
  std::vector<std::pair<size_type, size_type>> out;
  hirschberg(x.data(), x.size(), 0, y.data(), y.size(), 0, out);
  return out;
}

align_pair approx_lcs(const suffix_structures& reference, const suffix_structures& target,
                      size_type context_length, std::uint64_t budget)
{
  if(context_length == 0 || context_length > 8)
  {
    throw std::invalid_argument("approx_lcs: context length must be in [1, 8]");
  }
  size_type n_r = reference.size(), n_s = target.size();

  // First context_length characters of the i-th smallest suffix, packed so
  // that integer order equals lexicographic order. Contexts are nondecreasing
  // along the BWT, so equal-context blocks are consecutive ranges.
  auto context_of = [context_length](const suffix_structures& str, size_type i) -> std::uint64_t
  {
    std::uint64_t id = 0;
    size_type start = str.sa[i - 1];
    for(size_type t = 0; t < context_length; t++)
    {
      byte_type c = (start + t <= str.size() ? str.text[start + t - 1] : ENDMARKER);
      id = (id << 8) | c;
    }
    return id;
  };

  std::vector<bool> mr(n_r, false), ms(n_s, false);
  size_type a = 1, b = 1;
  while(a <= n_r && b <= n_s)
  {
    std::uint64_t ca = context_of(reference, a), cb = context_of(target, b);
    if(ca < cb) { a++; continue; }
    if(cb < ca) { b++; continue; }
    size_type a_end = a + 1, b_end = b + 1;
    while(a_end <= n_r && context_of(reference, a_end) == ca) { a_end++; }
    while(b_end <= n_s && context_of(target, b_end) == ca) { b_end++; }
    size_type len_x = a_end - a, len_y = b_end - b;
    std::vector<std::pair<size_type, size_type>> pairs;
    if(len_y > 0 && len_x > budget / len_y)
    {
      greedy_pairs(reference.bwt.data() + (a - 1), len_x, 0,
                   target.bwt.data() + (b - 1), len_y, 0, pairs);
    }
    else
    {
      std::vector<byte_type> x(reference.bwt.begin() + (a - 1), reference.bwt.begin() + (a_end - 1));
      std::vector<byte_type> y(target.bwt.begin() + (b - 1), target.bwt.begin() + (b_end - 1));
      pairs = block_lcs_pairs(x, y);
    }
    for(auto [px, py] : pairs)
    {
      mr[a - 1 + px] = true;
      ms[b - 1 + py] = true;
    }
    a = a_end; b = b_end;
  }

  align_pair out;
  out.left = adaptive_bitvector(mr);
  out.right = adaptive_bitvector(ms);
  out.check();
  return out;
}

bitvector build_merging_bitvector(const fm_index& csa_r, const fm_index& csa_s)
{
  size_type n_r = csa_r.size(), n_s = csa_s.size();
  std::vector<bool> bits(n_r + n_s, false);

  // Backward search of S in the reference: k counts the suffixes of R smaller
  // than the current suffix of S, with ties ordering R first. The mutual
  // position of S[a, |S|] is then k plus its rank among the suffixes of S.
  size_type isa_s = 1;  // ISA_S[|S|]: the endmarker suffix is the smallest
  size_type k = 1;      // only the endmarker suffix of R precedes it
  for(size_type a = n_s; ; a--)
  {
    bits[k + isa_s - 1] = true;
    if(a == 1) { break; }
    byte_type c = byte_type(csa_s.bwt_at(isa_s));  // S[a - 1]
    k = csa_r.c_values()[c] + csa_r.bwt_rank(c, k);
    isa_s = csa_s.lf(isa_s);
  }
  return bitvector(bits);
}

size_type match_arrays::value_at(const std::vector<match_run>& runs, size_type j)
{
  auto it = std::upper_bound(runs.begin(), runs.end(), j,
    [](size_type pos, const match_run& run) { return pos < run.start; });
  if(it == runs.begin()) { return 0; }
  --it;
  if(j >= it->start + it->length) { return 0; }
  return it->value + (j - it->start);
}

namespace {

// Coalesces per-position matches, collected in decreasing position order,
// into maximal runs where both coordinates advance in lockstep.
std::vector<match_run> coalesce_runs(std::vector<std::pair<size_type, size_type>>& pairs)
{
  std::reverse(pairs.begin(), pairs.end());
  std::vector<match_run> runs;
  for(auto [pos, value] : pairs)
  {
    if(!runs.empty())
    {
      match_run& last = runs.back();
      if(last.start + last.length == pos && last.value + last.length == value)
      {
        last.length++;
        continue;
      }
    }
    runs.push_back({ pos, value, 1 });
  }
  return runs;
}

} // anonymous namespace

match_arrays build_match_arrays(const bitvector& b_rs,
                                const fm_index& csa_r, const fm_index& csa_s)
{
  size_type n_r = csa_r.size(), n_s = csa_s.size();
  if(b_rs.size() != n_r + n_s || b_rs.count_ones() != n_s)
  {
    throw std::invalid_argument("build_match_arrays: merging bitvector does not fit the indexes");
  }

  match_arrays m;
  m.size = n_r;
  std::vector<std::pair<size_type, size_type>> lpairs, rpairs;

  // Backward traversal maintaining j = SA_R[i]. A neighbor chain survives one
  // step when the neighbor of rank l at position j equals LF_S of the rank at
  // j + 1; chained values decrease by one, so locate runs once per chain.
  size_type i = 1;  // ISA_R[|R|]
  size_type prev_l = 0, prev_lv = 0, prev_r = 0, prev_rv = 0;
  bool have_l = false, have_r = false;
  for(size_type j = n_r; j >= 1; j--)
  {
    size_type mut = b_rs.select0(i);
    byte_type c = c_array_inverse(csa_r.c_values(), i);

    if(mut > 1 && b_rs.bit(mut - 1))
    {
      size_type l = b_rs.rank1(mut - 1);
      size_type v;
      if(have_l && prev_lv > 1 && csa_s.lf(prev_l) == l) { v = prev_lv - 1; }
      else { v = csa_s.locate(l); }
      prev_l = l; prev_lv = v; have_l = true;
      if(c != ENDMARKER && c == c_array_inverse(csa_s.c_values(), l))
      {
        lpairs.emplace_back(j, v);
      }
    }
    else { have_l = false; }

    if(mut < n_r + n_s && b_rs.bit(mut + 1))
    {
      size_type r = b_rs.rank1(mut + 1);
      size_type v;
      if(have_r && prev_rv > 1 && csa_s.lf(prev_r) == r) { v = prev_rv - 1; }
      else { v = csa_s.locate(r); }
      prev_r = r; prev_rv = v; have_r = true;
      if(c != ENDMARKER && c == c_array_inverse(csa_s.c_values(), r))
      {
        rpairs.emplace_back(j, v);
      }
    }
    else { have_r = false; }

    if(j > 1) { i = csa_r.lf(i); }
  }

  m.left = coalesce_runs(lpairs);
  m.right = coalesce_runs(rpairs);
  return m;
}

lis_result lis_select(const match_arrays& m)
{
  constexpr size_type NONE = std::numeric_limits<size_type>::max();
  struct candidate { size_type pos, value, parent; };
  std::vector<candidate> cands;
  std::vector<size_type> tail_values, tail_cands;

  // Patience LIS over at most two candidate values per position. Candidates
  // of one position are processed in decreasing order, which makes chaining
  // them onto each other impossible.
  size_type li = 0, ri = 0;
  for(size_type j = 1; j <= m.size; j++)
  {
    while(li < m.left.size() && m.left[li].start + m.left[li].length <= j) { li++; }
    while(ri < m.right.size() && m.right[ri].start + m.right[ri].length <= j) { ri++; }
    size_type vl = 0, vr = 0;
    if(li < m.left.size() && m.left[li].start <= j) { vl = m.left[li].value + (j - m.left[li].start); }
    if(ri < m.right.size() && m.right[ri].start <= j) { vr = m.right[ri].value + (j - m.right[ri].start); }
    size_type first = std::max(vl, vr), second = std::min(vl, vr);
    if(second == first) { second = 0; }
    for(size_type v : { first, second })
    {
      if(v == 0) { continue; }
      size_type idx = std::lower_bound(tail_values.begin(), tail_values.end(), v) - tail_values.begin();
      size_type parent = (idx > 0 ? tail_cands[idx - 1] : NONE);
      cands.push_back({ j, v, parent });
      if(idx == tail_values.size()) { tail_values.push_back(v); tail_cands.push_back(cands.size() - 1); }
      else { tail_values[idx] = v; tail_cands[idx] = cands.size() - 1; }
    }
  }

  lis_result res;
  res.marks.assign(m.size, false);
  if(tail_cands.empty()) { return res; }
  std::vector<std::pair<size_type, size_type>> chain;
  for(size_type c = tail_cands.back(); c != NONE; c = cands[c].parent)
  {
    chain.emplace_back(cands[c].pos, cands[c].value);
  }
  std::reverse(chain.begin(), chain.end());
  for(auto [pos, value] : chain)
  {
    res.marks[pos - 1] = true;
    res.values.push_back(value);
  }
  return res;
}

namespace {

// Longest strictly increasing subsequence of distinct values: returns the
// kept indexes. Patience sorting with parent reconstruction.
std::vector<size_type> increasing_subset(const std::vector<size_type>& values)
{
  constexpr size_type NONE = std::numeric_limits<size_type>::max();
  std::vector<size_type> tail_values, tail_idx, parent(values.size(), NONE);
  for(size_type t = 0; t < values.size(); t++)
  {
    size_type at = std::lower_bound(tail_values.begin(), tail_values.end(), values[t]) - tail_values.begin();
    parent[t] = (at > 0 ? tail_idx[at - 1] : NONE);
    if(at == tail_values.size()) { tail_values.push_back(values[t]); tail_idx.push_back(t); }
    else { tail_values[at] = values[t]; tail_idx[at] = t; }
  }
  std::vector<size_type> kept;
  if(tail_idx.empty()) { return kept; }
  for(size_type t = tail_idx.back(); t != NONE; t = parent[t]) { kept.push_back(t); }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

} // anonymous namespace

align_pair text_align_to_bwt_align(const std::vector<bool>& b_r, const std::vector<bool>& b_s,
                                   const fm_index& csa_r, const fm_index& csa_s,
                                   std::vector<bool>* kept_r, std::vector<bool>* kept_s)
{
  size_type n_r = csa_r.size(), n_s = csa_s.size();
  if(b_r.size() != n_r || b_s.size() != n_s)
  {
    throw std::invalid_argument("text_align_to_bwt_align: mark vector sizes differ from the indexes");
  }
  std::vector<size_type> pr, ps;
  for(size_type p = 1; p <= n_r; p++) { if(b_r[p - 1]) { pr.push_back(p); } }
  for(size_type q = 1; q <= n_s; q++) { if(b_s[q - 1]) { ps.push_back(q); } }
  if(pr.size() != ps.size())
  {
    throw std::invalid_argument("text_align_to_bwt_align: mark counts differ between the sides");
  }
  bool drop_r = (!pr.empty() && pr.back() == n_r), drop_s = (!ps.empty() && ps.back() == n_s);
  if(drop_r != drop_s)
  {
    throw std::invalid_argument("text_align_to_bwt_align: the final position is paired on one side only");
  }
  if(drop_r) { pr.pop_back(); ps.pop_back(); }  // the endmarker never aligns
  size_type pairs = pr.size();

  // The mark at text position p needs ISA[p + 1]; one backward traversal per
  // sequence collects all of them.
  auto collect = [](const fm_index& csa, const std::vector<size_type>& marks) -> std::vector<size_type>
  {
    std::vector<size_type> out(marks.size());
    size_type i = 1;  // ISA[n]
    size_type idx = marks.size();
    for(size_type j = csa.size(); j >= 2; j--)
    {
      if(idx > 0 && marks[idx - 1] == j - 1) { idx--; out[idx] = i; }
      i = csa.lf(i);
    }
    return out;
  };
  std::vector<size_type> ir = collect(csa_r, pr), is = collect(csa_s, ps);

  // Sort by reference BWT position and keep a longest subset that also
  // increases on the target side.
  std::vector<size_type> order(pairs);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_type a, size_type b) { return ir[a] < ir[b]; });
  std::vector<size_type> is_sorted(pairs);
  for(size_type t = 0; t < pairs; t++) { is_sorted[t] = is[order[t]]; }
  std::vector<size_type> lis = increasing_subset(is_sorted);

  std::vector<bool> mr(n_r, false), ms(n_s, false);
  if(kept_r != nullptr) { kept_r->assign(n_r, false); }
  if(kept_s != nullptr) { kept_s->assign(n_s, false); }
  for(size_type t : lis)
  {
    size_type pair = order[t];
    mr[ir[pair] - 1] = true;
    ms[is[pair] - 1] = true;
    if(kept_r != nullptr) { (*kept_r)[pr[pair] - 1] = true; }
    if(kept_s != nullptr) { (*kept_s)[ps[pair] - 1] = true; }
  }
  align_pair out;
  out.left = adaptive_bitvector(mr);
  out.right = adaptive_bitvector(ms);
  return out;
}

relative_fm::relative_fm(const fm_index& reference_index,
                         const text_type& reference, const text_type& target,
                         const rfm_params& params) :
  ref(&reference_index), n(target.size()), is_full(params.full), params(params)
{
  validate_text(reference);
  validate_text(target);
  if(reference_index.size() != reference.size())
  {
    throw std::invalid_argument("relative_fm: reference index size differs from the reference text");
  }
  if(this->params.sa_interval == 0 || this->params.isa_interval == 0)
  {
    throw std::invalid_argument("relative_fm: sample intervals must be positive");
  }

  suffix_structures str_s = build_suffix_structures(target);
  if(this->is_full)
  {
    fm_index csa_s(str_s);
    bitvector b_rs = build_merging_bitvector(reference_index, csa_s);
    match_arrays m = build_match_arrays(b_rs, reference_index, csa_s);
    lis_result sel = lis_select(m);
    std::vector<bool> b_r(sel.marks), b_s(target.size(), false);
    for(size_type v : sel.values) { b_s[v - 1] = true; }
    if((!b_r.empty() && b_r.back()) || (!b_s.empty() && b_s.back()))
    {
      throw std::logic_error("relative_fm: the endmarker ended up in the alignment");
    }
    std::vector<bool> kept_r, kept_s;
    this->align_bwt = text_align_to_bwt_align(b_r, b_s, reference_index, csa_s, &kept_r, &kept_s);
    this->align_text.left = adaptive_bitvector(kept_r);
    this->align_text.right = adaptive_bitvector(kept_s);

    std::vector<size_type> sa_vals;
    for(size_type i = 1; i <= this->n; i += this->params.sa_interval) { sa_vals.push_back(str_s.sa[i - 1]); }
    this->sa_samples = int_vector(sa_vals, this->n);
    std::vector<size_type> isa_vals;
    for(size_type p = 1; p <= this->n; p += this->params.isa_interval) { isa_vals.push_back(str_s.isa[p - 1]); }
    isa_vals.push_back(str_s.isa[this->n - 1]);  // ISA[n], in case n is off the grid
    this->isa_samples = int_vector(isa_vals, this->n);
  }
  else
  {
    suffix_structures str_r = build_suffix_structures(reference);
    this->align_bwt = approx_lcs(str_r, str_s, this->params.context_length, this->params.lcs_budget);
  }

  this->build_complements(str_s.bwt);
  std::array<size_type, SIGMA> counts{};
  for(byte_type c : str_s.bwt) { counts[c]++; }
  this->C = c_array_from_counts(counts);
  this->check_structure();
}

void relative_fm::build_complements(const text_type& bwt_s)
{
  size_type n_r = this->ref->size();
  std::vector<symbol_type> cr;
  cr.reserve(n_r - this->align_bwt.left.count_ones());
  std::array<size_type, SIGMA> counts_r{};
  for(size_type j = 1; j <= n_r; j++)
  {
    if(this->align_bwt.left.bit(j)) { continue; }
    symbol_type c = this->ref->bwt_at(j);
    cr.push_back(c); counts_r[c]++;
  }
  this->clcs_r = wavelet_tree(cr);
  this->c_clcs_r = c_array_from_counts(counts_r);

  std::vector<symbol_type> cs;
  cs.reserve(this->n - this->align_bwt.right.count_ones());
  std::array<size_type, SIGMA> counts_s{};
  for(size_type j = 1; j <= this->n; j++)
  {
    if(this->align_bwt.right.bit(j)) { continue; }
    symbol_type c = bwt_s[j - 1];
    cs.push_back(c); counts_s[c]++;
  }
  this->clcs_s = wavelet_tree(cs);
  this->c_clcs_s = c_array_from_counts(counts_s);
}

void relative_fm::check_structure() const
{
  this->align_bwt.check();
  size_type pairs = this->align_bwt.pairs();
  if(this->align_bwt.left.size() != this->ref->size() || this->align_bwt.right.size() != this->n)
  {
    throw std::runtime_error("relative_fm: alignment sizes differ from the sequences (wrong reference index?)");
  }
  if(this->clcs_r.size() + pairs != this->ref->size()
    || this->clcs_s.size() + pairs != this->n)
  {
    throw std::runtime_error("relative_fm: complement sizes do not add up");
  }
  if(this->is_full)
  {
    this->align_text.check();
    if(this->align_text.pairs() != pairs
      || this->align_text.left.size() != this->ref->size()
      || this->align_text.right.size() != this->n)
    {
      throw std::runtime_error("relative_fm: text alignment is inconsistent with the BWT alignment");
    }
  }
  std::array<size_type, SIGMA> counts{};
  for(size_type c = 0; c < SIGMA; c++)
  {
    counts[c] = this->ref->bwt_rank(byte_type(c), this->ref->size())
      - this->clcs_r.count(c) + this->clcs_s.count(c);
  }
  if(c_array_from_counts(counts) != this->C)
  {
    throw std::runtime_error("relative_fm: C array disagrees with the stored sequences");
  }
}

size_type relative_fm::select(byte_type c, size_type j, const rselect* rs) const
{
  if(rs != nullptr) { return rs->select(*this, c, j); }
  if(j == 0 || j > this->C[c + 1] - this->C[c])
  {
    throw std::out_of_range("relative_fm::select: no such occurrence");
  }
  size_type lo = 1, hi = this->n;
  while(lo < hi)
  {
    size_type mid = lo + (hi - lo) / 2;
    if(this->rank(c, mid) >= j) { hi = mid; } else { lo = mid + 1; }
  }
  return lo;
}

range_type relative_fm::find(const text_type& pattern) const
{
  range_type range { 1, this->n };
  for(auto it = pattern.rbegin(); it != pattern.rend(); ++it)
  {
    range = this->backward_step(range, *it);
    if(empty_range(range)) { return { 1, 0 }; }
  }
  return range;
}

size_type relative_fm::locate(size_type i) const
{
  if(!this->is_full) { throw std::logic_error("relative_fm::locate: the basic variant does not support locate"); }
  if(i == 0 || i > this->n) { throw std::out_of_range("relative_fm::locate: position out of range"); }
  size_type steps = 0, d = this->params.sa_interval;
  while(true)
  {
    if((i - 1) % d == 0)
    {
      size_type value = this->sa_samples.get((i - 1) / d);
      return (value + steps - 1) % this->n + 1;  // the walk may pass the endmarker
    }
    if(this->align_bwt.right.bit(i))
    {
      size_type k = this->align_bwt.right.rank1(i);
      size_type j = this->align_bwt.left.select1(k);
      size_type p = this->ref->locate(j) - 1;          // aligned position in R
      size_type t = this->align_text.left.rank1(p);
      size_type value = this->align_text.right.select1(t) + 1;  // SA_S[i]
      return (value + steps - 1) % this->n + 1;
    }
    i = this->lf(i); steps++;
  }
}

std::vector<size_type> relative_fm::locate(range_type range) const
{
  std::vector<size_type> res;
  for(size_type i = range.first; i <= range.second; i++) { res.push_back(this->locate(i)); }
  return res;
}

size_type relative_fm::isa(size_type p) const
{
  if(!this->is_full) { throw std::logic_error("relative_fm::isa: the basic variant does not support isa"); }
  if(p == 0 || p > this->n) { throw std::out_of_range("relative_fm::isa: position out of range"); }
  size_type d = this->params.isa_interval;
  size_type grid = (p - 1 + d - 1) / d;  // nearest sampled position at or after p
  size_type sampled_pos, i;
  if(grid * d + 1 <= this->n) { sampled_pos = grid * d + 1; i = this->isa_samples.get(grid); }
  else { sampled_pos = this->n; i = this->isa_samples.get(this->isa_samples.size() - 1); }

  // An aligned target position q at or after p gives ISA_S[q + 1] through the
  // reference; take it when it shortens the walk.
  size_type t = this->align_text.right.rank1(p - 1) + 1;
  if(t <= this->align_text.pairs())
  {
    size_type q = this->align_text.right.select1(t);
    if(q + 1 < sampled_pos)
    {
      size_type j = this->align_text.left.select1(t);
      size_type i_r = this->ref->isa(j + 1);
      size_type k = this->align_bwt.left.rank1(i_r);
      i = this->align_bwt.right.select1(k);
      sampled_pos = q + 1;
    }
  }
  for(size_type q = sampled_pos; q > p; q--) { i = this->lf(i); }
  return i;
}

text_type relative_fm::extract(size_type i, size_type j) const
{
  if(!this->is_full) { throw std::logic_error("relative_fm::extract: the basic variant does not support extract"); }
  if(i == 0 || j > this->n || i > j) { throw std::out_of_range("relative_fm::extract: bad range"); }
  text_type res(j - i + 1, 0);
  size_type r = this->isa(j % this->n + 1);  // SA[r] = j + 1 (mod n): BWT[r] = T[j]
  for(size_type p = j; p >= i; p--)
  {
    res[p - i] = this->bwt_at(r);
    r = this->lf(r);
  }
  return res;
}

void relative_fm::serialize(std::ostream& out) const
{
  io::blob payload;
  payload.add_u64(this->n);
  payload.add_u64(this->is_full ? 1 : 0);
  payload.add_u64(this->params.sa_interval);
  payload.add_u64(this->params.isa_interval);
  payload.add_structure(this->clcs_r);
  payload.add_words(std::vector<std::uint64_t>(this->c_clcs_r.begin(), this->c_clcs_r.end()));
  payload.add_structure(this->clcs_s);
  payload.add_words(std::vector<std::uint64_t>(this->c_clcs_s.begin(), this->c_clcs_s.end()));
  payload.add_structure(this->align_bwt.left);
  payload.add_structure(this->align_bwt.right);
  if(this->is_full)
  {
    payload.add_structure(this->align_text.left);
    payload.add_structure(this->align_text.right);
    payload.add_structure(this->sa_samples);
    payload.add_structure(this->isa_samples);
    payload.add_words(std::vector<std::uint64_t>(this->C.begin(), this->C.end()));
  }
  payload.write(out, TAG_RELATIVE_FM);
}

namespace {

c_array_type c_array_from_words(const std::vector<std::uint64_t>& words, const char* what)
{
  if(words.size() != SIGMA + 1) { throw std::runtime_error(std::string(what) + ": corrupt C array"); }
  c_array_type C;
  std::copy(words.begin(), words.end(), C.begin());
  return C;
}

} // anonymous namespace

void relative_fm::load(std::istream& in, const fm_index& reference_index)
{
  io::reader reader(in, TAG_RELATIVE_FM);
  this->ref = &reference_index;
  this->n = reader.u64();
  this->is_full = (reader.u64() & 1);
  this->params = rfm_params();
  this->params.full = this->is_full;
  this->params.sa_interval = reader.u64();
  this->params.isa_interval = reader.u64();
  reader.structure(this->clcs_r);
  this->c_clcs_r = c_array_from_words(reader.words(), "relative_fm");
  reader.structure(this->clcs_s);
  this->c_clcs_s = c_array_from_words(reader.words(), "relative_fm");
  reader.structure(this->align_bwt.left);
  reader.structure(this->align_bwt.right);
  if(this->is_full)
  {
    reader.structure(this->align_text.left);
    reader.structure(this->align_text.right);
    reader.structure(this->sa_samples);
    reader.structure(this->isa_samples);
    this->C = c_array_from_words(reader.words(), "relative_fm");
  }
  else
  {
    this->align_text = align_pair();
    this->sa_samples = int_vector();
    this->isa_samples = int_vector();
    std::array<size_type, SIGMA> counts{};
    for(size_type c = 0; c < SIGMA; c++)
    {
      counts[c] = this->ref->bwt_rank(byte_type(c), this->ref->size())
        - this->clcs_r.count(c) + this->clcs_s.count(c);
    }
    this->C = c_array_from_counts(counts);
  }
  this->check_structure();
}

rselect::rselect(const relative_fm& rfm)
{
  const fm_index& ref = rfm.reference();
  const align_pair& ab = rfm.bwt_alignment();
  size_type n_r = ref.size(), n_s = rfm.size();

  // B_F[LF(j)] = B_BWT[j]: one counting pass per sequence plants the marks in
  // F-column order.
  std::vector<bool> fr(n_r, false), fs(n_s, false);
  std::array<size_type, SIGMA> seen{};
  for(size_type j = 1; j <= n_r; j++)
  {
    byte_type c = byte_type(ref.bwt_at(j));
    seen[c]++;
    if(ab.left.bit(j)) { fr[ref.c_values()[c] + seen[c] - 1] = true; }
  }
  seen.fill(0);
  std::array<size_type, SIGMA> lcs_counts{};
  for(size_type j = 1; j <= n_s; j++)
  {
    byte_type c = rfm.bwt_at(j);
    seen[c]++;
    if(ab.right.bit(j)) { fs[rfm.c_values()[c] + seen[c] - 1] = true; lcs_counts[c]++; }
  }
  this->f_marks.left = adaptive_bitvector(fr);
  this->f_marks.right = adaptive_bitvector(fs);
  this->c_lcs = c_array_from_counts(lcs_counts);
  this->f_marks.check();
}

size_type rselect::select(const relative_fm& rfm, byte_type c, size_type j) const
{
  const c_array_type& C = rfm.c_values();
  if(j == 0 || j > C[c + 1] - C[c])
  {
    throw std::out_of_range("rselect::select: no such occurrence");
  }
  size_type y = C[c] + j;  // F-position of the j-th c in the target
  size_type k = this->f_marks.right.rank1(y) - this->c_lcs[c];
  if(this->f_marks.right.bit(y))
  {
    const fm_index& ref = rfm.reference();
    size_type f_r = this->f_marks.left.select1(this->c_lcs[c] + k);
    size_type j_r = ref.bwt_select(c, f_r - ref.c_values()[c]);
    size_type pair = rfm.bwt_alignment().left.rank1(j_r);
    return rfm.bwt_alignment().right.select1(pair);
  }
  size_type pos = rfm.complement_s().select(c, j - k);
  return rfm.bwt_alignment().right.select0(pos);
}

void rselect::serialize(std::ostream& out) const
{
  io::blob payload;
  payload.add_structure(this->f_marks.left);
  payload.add_structure(this->f_marks.right);
  payload.add_words(std::vector<std::uint64_t>(this->c_lcs.begin(), this->c_lcs.end()));
  payload.write(out, TAG_RSELECT);
}

void rselect::load(std::istream& in)
{
  io::reader reader(in, TAG_RSELECT);
  reader.structure(this->f_marks.left);
  reader.structure(this->f_marks.right);
  this->c_lcs = c_array_from_words(reader.words(), "rselect");
  this->f_marks.check();
  if(this->c_lcs[SIGMA] != this->f_marks.pairs())
  {
    throw std::runtime_error("rselect: aligned symbol counts disagree with the marks");
  }
}

} // namespace rst
