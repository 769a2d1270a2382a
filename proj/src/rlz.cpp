#include <algorithm>

#include <rst/rlz.hpp>
#include <rst/text.hpp>

namespace rst {

//------------------------------------------------------------------------------
// rlz_matcher
//------------------------------------------------------------------------------

rlz_matcher::rlz_matcher(std::vector<value_type> reference) : ref_raw(std::move(reference))
{
  this->alphabet = this->ref_raw;
  std::sort(this->alphabet.begin(), this->alphabet.end());
  this->alphabet.erase(std::unique(this->alphabet.begin(), this->alphabet.end()),
                       this->alphabet.end());

  size_type m = this->ref_raw.size();
  this->ref_ids.resize(m);
  for(size_type i = 0; i < m; i++) { this->ref_ids[i] = this->id_of(this->ref_raw[i]); }

  // Suffix-sort the reversed reference with a 0 sentinel; matching a pattern
  // left to right with backward search on this index finds its occurrences in
  // the forward reference.
  std::vector<symbol_type> rev(m + 1);
  for(size_type i = 0; i < m; i++) { rev[i] = this->ref_ids[m - 1 - i]; }
  rev[m] = 0;
  this->rev_sa = build_suffix_array(rev);

  std::vector<symbol_type> bwt(m + 1);
  for(size_type i = 0; i <= m; i++)
  {
    size_type p = this->rev_sa[i];
    bwt[i] = (p == 1 ? rev[m] : rev[p - 2]);
  }
  this->rev_bwt = wavelet_tree(bwt);

  size_type sigma = this->alphabet.size() + 1;  // ids 0 (sentinel) .. A
  this->rev_c.assign(sigma + 1, 0);
  for(symbol_type c : rev) { this->rev_c[c + 1]++; }
  for(size_type c = 1; c <= sigma; c++) { this->rev_c[c] += this->rev_c[c - 1]; }

  // Sparse table of range maxima over the suffix array. The largest reversed
  // position corresponds to the smallest forward source, which is the
  // tie-break among equally long matches.
  size_type levels = bit_width(this->rev_sa.size());
  this->max_table.resize(levels);
  this->max_table[0].assign(this->rev_sa.begin(), this->rev_sa.end());
  for(size_type k = 1; k < levels; k++)
  {
    size_type half = size_type(1) << (k - 1);
    size_type entries = this->rev_sa.size() - (size_type(1) << k) + 1;
    this->max_table[k].resize(entries);
    for(size_type i = 0; i < entries; i++)
    {
      this->max_table[k][i] = std::max(this->max_table[k - 1][i], this->max_table[k - 1][i + half]);
    }
  }
}

symbol_type rlz_matcher::id_of(value_type v) const
{
  auto it = std::lower_bound(this->alphabet.begin(), this->alphabet.end(), v);
  if(it != this->alphabet.end() && *it == v)
  {
    return symbol_type(it - this->alphabet.begin()) + 1;
  }
  return symbol_type(this->alphabet.size()) + 1;  // foreign, never matches
}

size_type rlz_matcher::range_max(size_type sp, size_type ep) const
{
  size_type k = bit_width(ep - sp + 1) - 1;
  return std::max(this->max_table[k][sp - 1], this->max_table[k][ep - (size_type(1) << k)]);
}

std::pair<size_type, size_type> rlz_matcher::longest_match(const std::vector<symbol_type>& target_ids,
                                                           size_type from, size_type max_len) const
{
  size_type m = this->size();
  size_type sp = 1, ep = m + 1, len = 0;
  size_type limit = std::min(max_len, target_ids.size() - (from - 1));
  while(len < limit)
  {
    symbol_type c = target_ids[from - 1 + len];
    if(c > this->alphabet.size()) { break; }
    size_type nsp = this->rev_c[c] + this->rev_bwt.rank(c, sp - 1) + 1;
    size_type nep = this->rev_c[c] + this->rev_bwt.rank(c, ep);
    if(nsp > nep) { break; }
    sp = nsp; ep = nep; len++;
  }
  if(len == 0) { return { 0, 0 }; }
  size_type q = this->range_max(sp, ep);
  return { len, m - q - len + 2 };
}

size_type rlz_matcher::extension(const std::vector<symbol_type>& target_ids,
                                 size_type from, size_type source, size_type max_len) const
{
  size_type limit = std::min(max_len, target_ids.size() - (from - 1));
  limit = std::min(limit, this->size() - (source - 1));
  size_type len = 0;
  while(len < limit && target_ids[from - 1 + len] == this->ref_ids[source - 1 + len]) { len++; }
  return len;
}

std::vector<symbol_type> rlz_matcher::map_target(const std::vector<value_type>& target) const
{
  std::vector<symbol_type> res(target.size());
  for(size_type i = 0; i < target.size(); i++) { res[i] = this->id_of(target[i]); }
  return res;
}

//------------------------------------------------------------------------------
// rlz_parse construction
//------------------------------------------------------------------------------

namespace
{

struct phrase_record
{
  size_type copy_len = 0;
  bool diff = false;
  value_type offset = 0;             // source - start (W_r)
  std::vector<value_type> literals;  // real mismatch literals
};

} // anonymous namespace

class rlz_builder
{
public:
  static rlz_parse run(const rlz_matcher& matcher, const std::vector<value_type>& target,
                       const rlz_params& params)
  {
    std::vector<symbol_type> tids = matcher.map_target(target);
    size_type m = target.size();
    std::vector<phrase_record> recs;
    bool terminated = false;
    value_type anchor = 0;
    bool have_anchor = false;

    size_type t = 1;
    while(t <= m)
    {
      size_type start = t, len = 0, src = 0;
      bool diff = false;

      if(have_anchor)
      {
        // Probe a window of start positions for a source near the anchor.
        // Shifts are tried outward from 0 and the longest extension wins;
        // the first start with a long enough match is taken so that few
        // positions are skipped.
        size_type last = std::min(m, t + params.probe_starts - 1);
        for(size_type j = t; j <= last && len == 0; j++)
        {
          size_type best_len = 0, best_src = 0;
          size_type cap = std::min(params.max_phrase_length, m - j + 1);
          for(size_type shift = 0; shift <= params.probe_shift; shift++)
          {
            for(int side = 0; side < (shift == 0 ? 1 : 2); side++)
            {
              value_type delta = (side == 0 ? -value_type(shift) : value_type(shift));
              value_type p = anchor + value_type(j) + delta;
              if(p < 1 || p > value_type(matcher.size())) { continue; }
              size_type l = matcher.extension(tids, j, size_type(p), cap);
              if(l > best_len) { best_len = l; best_src = size_type(p); }
            }
          }
          if(best_len >= params.min_probe_length)
          {
            start = j; len = best_len; src = best_src; diff = true;
          }
        }
      }

      if(len == 0 && !diff)
      {
        start = t;
        auto match = matcher.longest_match(tids, t, std::min(params.max_phrase_length, m - t + 1));
        len = match.first; src = match.second;
      }
      else
      {
        // Positions skipped by the probe become literals of the previous phrase.
        for(size_type q = t; q < start; q++) { recs.back().literals.push_back(target[q - 1]); }
      }

      phrase_record rec;
      rec.copy_len = len;
      rec.diff = diff;
      rec.offset = (len == 0 ? 0 : value_type(src) - value_type(start));
      size_type after = start + len;
      if(after <= m) { rec.literals.push_back(target[after - 1]); t = after + 1; }
      else { terminated = true; t = after; }
      recs.push_back(std::move(rec));
      if(!diff) { anchor = recs.back().offset; have_anchor = true; }
    }

    return pack(recs, target, terminated, params);
  }

private:
  static rlz_parse pack(const std::vector<phrase_record>& recs,
                        const std::vector<value_type>& target,
                        bool terminated, const rlz_params& params)
  {
    rlz_parse res;
    res.target_length = target.size();
    res.terminated = terminated;
    size_type z = recs.size();

    std::vector<size_type> start_positions;
    std::vector<bool> diff_bits(z);
    std::vector<size_type> explicit_values, delta_values, slot_sums;
    std::vector<size_type> literal_values;

    size_type pos = 1, slots = 0;
    value_type anchor = 0;
    for(size_type i = 0; i < z; i++)
    {
      const phrase_record& rec = recs[i];
      start_positions.push_back(pos);
      pos += rec.copy_len + rec.literals.size();
      diff_bits[i] = rec.diff;
      if(rec.diff)
      {
        value_type delta = rec.offset - anchor;
        if(delta < -value_type(params.probe_shift) || delta > value_type(params.probe_shift))
        {
          throw std::logic_error("rlz: differential offset outside the probe window");
        }
        delta_values.push_back(size_type(delta + 32768));
      }
      else
      {
        explicit_values.push_back(zigzag_encode(rec.offset));
        anchor = rec.offset;
      }
      slots += rec.literals.size() + (i == z - 1 && terminated ? 1 : 0);
      slot_sums.push_back(slots);
      for(value_type lit : rec.literals) { literal_values.push_back(zigzag_encode(lit)); }
    }
    if(terminated) { literal_values.push_back(zigzag_encode(0)); }

    res.starts = sparse_bitvector(start_positions, target.size());
    res.differential = bitvector(std::vector<bool>(diff_bits.begin(), diff_bits.end()));
    res.explicit_offsets = int_vector(explicit_values);
    res.delta_offsets = int_vector(delta_values, 65535);
    res.literal_slots = int_vector(slot_sums);
    res.literals = int_vector(literal_values);
    return res;
  }
};

rlz_parse rlz_parse::parse(const rlz_matcher& reference, const std::vector<value_type>& target,
                           const rlz_params& params)
{
  return rlz_builder::run(reference, target, params);
}

rlz_parse rlz_parse::parse(const std::vector<value_type>& reference,
                           const std::vector<value_type>& target,
                           const rlz_params& params)
{
  rlz_matcher matcher(reference);
  return rlz_builder::run(matcher, target, params);
}

//------------------------------------------------------------------------------
// rlz_parse queries
//------------------------------------------------------------------------------

value_type rlz_parse::offset(size_type i) const
{
  if(i == 0 || i > this->phrases()) { throw std::out_of_range("rlz_parse::offset: no such phrase"); }
  if(this->differential.bit(i))
  {
    size_type k = this->differential.rank0(i);  // explicit phrases up to i
    value_type anchor = (k == 0 ? 0 : zigzag_decode(this->explicit_offsets.get(k - 1)));
    value_type delta = value_type(this->delta_offsets.get(this->differential.rank1(i) - 1)) - 32768;
    return anchor + delta;
  }
  return zigzag_decode(this->explicit_offsets.get(this->differential.rank0(i) - 1));
}

size_type rlz_parse::copy_length(size_type i) const
{
  size_type span = this->phrase_end(i) - this->phrase_start(i) + 1;
  size_type real_literals = this->literal_count(i) - (i == this->phrases() && this->terminated ? 1 : 0);
  return span - real_literals;
}

value_type rlz_parse::literal(size_type slot) const
{
  if(this->terminated && slot == this->literals.size()) { return RLZ_TERMINATOR; }
  return zigzag_decode(this->literals.get(slot - 1));
}

value_type rlz_parse::access(size_type j, const std::vector<value_type>& reference) const
{
  if(j == 0 || j > this->size()) { throw std::out_of_range("rlz_parse::access: position out of range"); }
  size_type i = this->phrase_of(j);
  size_type off = j - this->phrase_start(i);
  size_type cl = this->copy_length(i);
  if(off < cl) { return reference[this->source(i) + off - 1]; }
  return this->literal(this->literal_sums(i - 1) + (off - cl) + 1);
}

std::vector<value_type> rlz_parse::decompress_phrase(size_type i,
                                                     const std::vector<value_type>& reference) const
{
  if(i == 0 || i > this->phrases()) { throw std::out_of_range("rlz_parse::decompress_phrase: no such phrase"); }
  std::vector<value_type> res;
  size_type cl = this->copy_length(i), src = this->source(i);
  res.reserve(cl + this->literal_count(i));
  for(size_type k = 0; k < cl; k++) { res.push_back(reference[src + k - 1]); }
  for(size_type slot = this->literal_sums(i - 1) + 1; slot <= this->literal_sums(i); slot++)
  {
    res.push_back(this->literal(slot));
  }
  return res;
}

//------------------------------------------------------------------------------
// rlz_parse serialization
//------------------------------------------------------------------------------

void rlz_parse::serialize(std::ostream& out) const
{
  io::blob payload;
  payload.add_u64(this->target_length);
  payload.add_u64(this->terminated ? 1 : 0);
  payload.add_structure(this->starts);
  payload.add_structure(this->differential);
  payload.add_structure(this->explicit_offsets);
  payload.add_structure(this->delta_offsets);
  payload.add_structure(this->literal_slots);
  payload.add_structure(this->literals);
  payload.write(out, TAG_RLZ_PARSE);
}

void rlz_parse::load(std::istream& in)
{
  io::reader reader(in, TAG_RLZ_PARSE);
  this->target_length = reader.u64();
  this->terminated = (reader.u64() != 0);
  reader.structure(this->starts);
  reader.structure(this->differential);
  reader.structure(this->explicit_offsets);
  reader.structure(this->delta_offsets);
  reader.structure(this->literal_slots);
  reader.structure(this->literals);
}

} // namespace rst
