#include <cassert>

#include <rst/fm_index.hpp>

namespace rst {

c_array_type c_array_from_counts(const std::array<size_type, SIGMA>& counts)
{
  c_array_type C;
  C[0] = 0;
  for(size_type c = 0; c < SIGMA; c++) { C[c + 1] = C[c] + counts[c]; }
  return C;
}

byte_type c_array_inverse(const c_array_type& C, size_type i)
{
  assert(i >= 1 && i <= C[SIGMA]);
  size_type lo = 0, hi = SIGMA - 1;
  while(lo < hi)
  {
    size_type mid = lo + (hi - lo + 1) / 2;
    if(C[mid] < i) { lo = mid; } else { hi = mid - 1; }
  }
  return byte_type(lo);
}

fm_index::fm_index(const suffix_structures& s, const fm_params& params) :
  n(s.size()), params(params)
{
  if(this->params.sa_interval == 0 || this->params.isa_interval == 0)
  {
    throw std::invalid_argument("fm_index: sample intervals must be positive");
  }

  this->bwt = wavelet_tree(std::vector<symbol_type>(s.bwt.begin(), s.bwt.end()));

  std::array<size_type, SIGMA> counts{};
  for(byte_type c : s.bwt) { counts[c]++; }
  this->C = c_array_from_counts(counts);

  size_type d = this->params.sa_interval;
  if(this->params.mode == SAMPLE_SUFFIX_ORDER)
  {
    std::vector<size_type> samples;
    for(size_type i = 1; i <= this->n; i += d) { samples.push_back(s.sa[i - 1]); }
    this->sa_samples = int_vector(samples, this->n);
  }
  else
  {
    std::vector<bool> marks(this->n, false);
    for(size_type i = 1; i <= this->n; i++)
    {
      size_type p = s.sa[i - 1];
      if((p - 1) % d == 0 || p == this->n) { marks[i - 1] = true; }
    }
    this->sa_marks = bitvector(marks);
    std::vector<size_type> samples;
    for(size_type i = 1; i <= this->n; i++)
    {
      if(marks[i - 1]) { samples.push_back(s.sa[i - 1]); }
    }
    this->sa_samples = int_vector(samples, this->n);
  }

  size_type di = this->params.isa_interval;
  std::vector<size_type> isa_s;
  for(size_type p = 1; p <= this->n; p += di) { isa_s.push_back(s.isa[p - 1]); }
  isa_s.push_back(s.isa[this->n - 1]);  // ISA[n], in case n is off the grid
  this->isa_samples = int_vector(isa_s, this->n);
}

range_type fm_index::find(const text_type& pattern) const
{
  range_type range { 1, this->n };
  for(auto it = pattern.rbegin(); it != pattern.rend(); ++it)
  {
    range = this->backward_step(range, *it);
    if(empty_range(range)) { return { 1, 0 }; }
  }
  return range;
}

size_type fm_index::locate(size_type i) const
{
  if(i == 0 || i > this->n) { throw std::out_of_range("fm_index::locate: position out of range"); }
  size_type steps = 0;
  if(this->params.mode == SAMPLE_SUFFIX_ORDER)
  {
    size_type d = this->params.sa_interval;
    while((i - 1) % d != 0) { i = this->lf(i); steps++; }
    size_type value = this->sa_samples.get((i - 1) / d);
    return (value + steps - 1) % this->n + 1;  // the walk may pass the endmarker
  }
  else
  {
    while(!this->sa_marks.bit(i)) { i = this->lf(i); steps++; }
    return this->sa_samples.get(this->sa_marks.rank1(i) - 1) + steps;
  }
}

std::vector<size_type> fm_index::locate(range_type range) const
{
  std::vector<size_type> res;
  for(size_type i = range.first; i <= range.second; i++) { res.push_back(this->locate(i)); }
  return res;
}

size_type fm_index::isa(size_type p) const
{
  if(p == 0 || p > this->n) { throw std::out_of_range("fm_index::isa: position out of range"); }
  size_type di = this->params.isa_interval;
  size_type grid = (p - 1 + di - 1) / di;  // nearest sampled position at or after p
  size_type sampled_pos, i;
  if(grid * di + 1 <= this->n) { sampled_pos = grid * di + 1; i = this->isa_samples.get(grid); }
  else { sampled_pos = this->n; i = this->isa_samples.get(this->isa_samples.size() - 1); }
  for(size_type q = sampled_pos; q > p; q--) { i = this->lf(i); }
  return i;
}

text_type fm_index::extract(size_type i, size_type j) const
{
  if(i == 0 || j > this->n || i > j) { throw std::out_of_range("fm_index::extract: bad range"); }
  text_type res(j - i + 1, 0);
  size_type r = this->isa(j % this->n + 1);  // SA[r] = j + 1 (mod n): BWT[r] = T[j]
  for(size_type p = j; p >= i; p--)
  {
    res[p - i] = this->bwt_at(r);
    r = this->lf(r);
  }
  return res;
}

void fm_index::serialize(std::ostream& out) const
{
  io::blob payload;
  payload.add_u64(this->n);
  payload.add_u64(this->params.sa_interval);
  payload.add_u64(this->params.isa_interval);
  payload.add_u64(this->params.mode);
  payload.add_structure(this->bwt);
  std::vector<std::uint64_t> c_words(this->C.begin(), this->C.end());
  payload.add_words(c_words);
  payload.add_structure(this->sa_samples);
  if(this->params.mode == SAMPLE_TEXT_ORDER) { payload.add_structure(this->sa_marks); }
  payload.add_structure(this->isa_samples);
  payload.write(out, TAG_FM_INDEX);
}

void fm_index::load(std::istream& in)
{
  io::reader reader(in, TAG_FM_INDEX);
  this->n = reader.u64();
  this->params.sa_interval = reader.u64();
  this->params.isa_interval = reader.u64();
  this->params.mode = sa_sample_mode(reader.u64());
  reader.structure(this->bwt);
  std::vector<std::uint64_t> c_words = reader.words();
  if(c_words.size() != SIGMA + 1) { throw std::runtime_error("fm_index: corrupt C array"); }
  std::copy(c_words.begin(), c_words.end(), this->C.begin());
  reader.structure(this->sa_samples);
  if(this->params.mode == SAMPLE_TEXT_ORDER) { reader.structure(this->sa_marks); }
  reader.structure(this->isa_samples);
}

} // namespace rst
