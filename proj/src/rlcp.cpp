#include <algorithm>

#include <rst/rlcp.hpp>

namespace rst {

//------------------------------------------------------------------------------
// minima_tree
//------------------------------------------------------------------------------

minima_tree::minima_tree(const std::vector<size_type>& leaf_minima)
{
  if(leaf_minima.empty()) { throw std::invalid_argument("minima_tree: no leaves"); }
  std::vector<size_type> nodes(leaf_minima);
  this->offsets = { 0, 1 };
  size_type level_start = 0, level_size = leaf_minima.size();
  while(level_size > 1)
  {
    this->offsets.push_back(this->offsets.back() + level_size);
    size_type blocks = (level_size + BRANCHING - 1) / BRANCHING;
    for(size_type b = 0; b < blocks; b++)
    {
      size_type from = level_start + b * BRANCHING;
      size_type to = std::min(from + BRANCHING, level_start + level_size);
      size_type low = nodes[from];
      for(size_type q = from + 1; q < to; q++) { low = std::min(low, nodes[q]); }
      nodes.push_back(low);
    }
    level_start += level_size; level_size = blocks;
  }
  this->offsets.push_back(this->offsets.back() + level_size);
  this->values = slarray(nodes);
}

position_value minima_tree::scan_min(size_type lo, size_type hi) const
{
  auto cur = this->values.scan(lo);
  position_value best{ lo, cur.next() };
  for(size_type i = lo + 1; i <= hi; i++)
  {
    size_type v = cur.next();
    if(v < best.value) { best = { i, v }; }
  }
  return best;
}

position_value minima_tree::level_min(size_type lo, size_type hi, size_type level) const
{
  if(level == this->height() || hi - lo + 1 <= 2 * BRANCHING)
  {
    return this->scan_min(lo, hi);
  }
  size_type pl = this->parent(lo, level), ph = this->parent(hi, level);
  if(pl == ph) { return this->scan_min(lo, hi); }

  // Partial child block of pl, whole parents strictly between pl and ph,
  // partial child block of ph; segments are ordered, so ties stay leftmost.
  position_value best = this->scan_min(lo, std::min(this->last_child(pl, level + 1), hi));
  if(pl + 1 <= ph - 1)
  {
    position_value mid = this->level_min(pl + 1, ph - 1, level + 1);
    if(mid.value < best.value)
    {
      best = { this->descend_value(mid.position, level + 1, mid.value, level), mid.value };
    }
  }
  size_type right_start = this->first_child(ph, level + 1);
  if(right_start <= hi)
  {
    position_value right = this->scan_min(right_start, hi);
    if(right.value < best.value) { best = right; }
  }
  return best;
}

position_value minima_tree::range_min(size_type lo, size_type hi) const
{
  if(lo == 0 || hi > this->leaves() || lo > hi)
  {
    throw std::invalid_argument("minima_tree::range_min: invalid leaf range");
  }
  return this->level_min(lo, hi, 1);
}

size_type minima_tree::descend_value(size_type node, size_type level,
                                     size_type value, size_type target_level) const
{
  while(level > target_level)
  {
    size_type next = 0;
    for(size_type i = this->first_child(node, level); i <= this->last_child(node, level); i++)
    {
      if(this->values.get(i) == value) { next = i; break; }
    }
    if(next == 0) { throw std::logic_error("minima_tree: node minimum not found among children"); }
    node = next; level--;
  }
  return node;
}

size_type minima_tree::descend_below(size_type node, size_type level, size_type bound,
                                     bool leftmost) const
{
  while(level > 1)
  {
    size_type first = this->first_child(node, level);
    size_type last = this->last_child(node, level);
    size_type next = 0;
    for(size_type q = 0; q <= last - first; q++)
    {
      size_type i = (leftmost ? first + q : last - q);
      if(this->values.get(i) < bound) { next = i; break; }
    }
    if(next == 0) { throw std::logic_error("minima_tree: no child below the bound"); }
    node = next; level--;
  }
  return node;
}

size_type minima_tree::next_below(size_type leaf, size_type bound) const
{
  size_type node = leaf, level = 1;
  while(level < this->height())
  {
    size_type p = this->parent(node, level);
    size_type last = this->last_child(p, level + 1);
    for(size_type i = node + 1; i <= last; i++)
    {
      if(this->values.get(i) < bound) { return this->descend_below(i, level, bound, true); }
    }
    node = p; level++;
  }
  return 0;
}

size_type minima_tree::prev_below(size_type leaf, size_type bound) const
{
  size_type node = leaf, level = 1;
  while(level < this->height())
  {
    size_type p = this->parent(node, level);
    size_type first = this->first_child(p, level + 1);
    for(size_type i = node; i > first; i--)
    {
      if(this->values.get(i - 1) < bound) { return this->descend_below(i - 1, level, bound, false); }
    }
    node = p; level++;
  }
  return 0;
}

void minima_tree::serialize(std::ostream& out) const
{
  this->values.serialize(out);
  int_vector(this->offsets).serialize(out);
}

void minima_tree::load(std::istream& in)
{
  this->values.load(in);
  int_vector packed;
  packed.load(in);
  this->offsets.resize(packed.size());
  for(size_type i = 0; i < packed.size(); i++) { this->offsets[i] = packed.get(i); }
}

//------------------------------------------------------------------------------
// rlcp_array construction
//------------------------------------------------------------------------------

namespace
{

// Streaming FNV-1a over the LE bytes of the size and values; binds a
// serialized structure to the reference LCP array it was built against.
size_type lcp_fingerprint(const slarray& lcp)
{
  size_type h = 0xCBF29CE484222325ULL;
  auto mix = [&h](size_type v)
  {
    for(int b = 0; b < 8; b++) { h ^= (v >> (8 * b)) & 0xFF; h *= 0x100000001B3ULL; }
  };
  mix(lcp.size());
  auto cur = lcp.scan(1);
  for(size_type i = 0; i < lcp.size(); i++) { mix(cur.next()); }
  return h;
}

} // anonymous namespace

std::vector<value_type> rlcp_array::differentials(const slarray& lcp)
{
  std::vector<value_type> res(lcp.size());
  auto cur = lcp.scan(1);
  value_type prev = 0;
  for(size_type i = 0; i < lcp.size(); i++)
  {
    value_type v = value_type(cur.next());
    res[i] = v - prev;
    prev = v;
  }
  return res;
}

rlcp_array::rlcp_array(const slarray& reference_lcp, const slarray& target_lcp,
                       const rlz_params& params)
  : ref(&reference_lcp), n(target_lcp.size())
{
  if(reference_lcp.size() == 0 || target_lcp.size() == 0)
  {
    throw std::invalid_argument("rlcp_array: empty LCP array");
  }
  this->ref_hash = lcp_fingerprint(reference_lcp);
  rlz_matcher matcher(differentials(reference_lcp));
  this->build(matcher, target_lcp, params);
}

rlcp_array::rlcp_array(const slarray& reference_lcp, const rlz_matcher& matcher,
                       const slarray& target_lcp, const rlz_params& params)
  : ref(&reference_lcp), n(target_lcp.size())
{
  if(reference_lcp.size() == 0 || target_lcp.size() == 0)
  {
    throw std::invalid_argument("rlcp_array: empty LCP array");
  }
  if(matcher.size() != reference_lcp.size())
  {
    throw std::invalid_argument("rlcp_array: matcher does not cover the reference");
  }
  this->ref_hash = lcp_fingerprint(reference_lcp);
  this->build(matcher, target_lcp, params);
}

void rlcp_array::build(const rlz_matcher& matcher, const slarray& target_lcp,
                       const rlz_params& params)
{
  this->parse = rlz_parse::parse(matcher, this->differentials(target_lcp), params);

  // Absolute values for the literal slots and per-phrase minima; one linear
  // pass over the target LCP array, which is not retained.
  std::vector<size_type> absolute, leaf_minima;
  absolute.reserve(this->parse.literal_offset(this->parse.phrases() + 1));
  leaf_minima.reserve(this->parse.phrases());
  auto cur = target_lcp.scan(1);
  for(size_type i = 1; i <= this->parse.phrases(); i++)
  {
    size_type copy_end = this->parse.phrase_start(i) + this->parse.copy_length(i) - 1;
    size_type low = std::numeric_limits<size_type>::max();
    for(size_type j = this->parse.phrase_start(i); j <= this->parse.phrase_end(i); j++)
    {
      size_type v = cur.next();
      low = std::min(low, v);
      if(j > copy_end) { absolute.push_back(v); }
    }
    leaf_minima.push_back(low);
  }
  if(this->parse.has_terminator()) { absolute.push_back(0); }

  this->parse.drop_literals();
  this->sample_values = slarray(absolute);
  this->minima = minima_tree(leaf_minima);
  this->check_structure();
}

void rlcp_array::check_structure() const
{
  if(this->parse.size() != this->n)
  {
    throw std::runtime_error("rlcp_array: parse length does not match the target");
  }
  if(this->minima.leaves() != this->parse.phrases())
  {
    throw std::runtime_error("rlcp_array: minima tree does not match the parse");
  }
  if(this->sample_values.size() != this->parse.literal_offset(this->parse.phrases() + 1))
  {
    throw std::runtime_error("rlcp_array: sample count does not match the literal slots");
  }
}

//------------------------------------------------------------------------------
// rlcp_array access
//------------------------------------------------------------------------------

access_result rlcp_array::access(size_type j) const
{
  if(j == 0 || j > this->n)
  {
    throw std::out_of_range("rlcp_array::access: position out of range");
  }
  size_type i = this->parse.phrase_of(j);
  size_type off = j - this->parse.phrase_start(i);
  size_type copied = this->parse.copy_length(i);
  if(off >= copied)
  {
    return { this->sample_values.get(this->parse.literal_offset(i) + (off - copied) + 1), i };
  }
  size_type src = this->parse.source(i);
  return { this->sample_before(i) + this->ref_value(src + off) - this->ref_value(src - 1), i };
}

std::vector<size_type> rlcp_array::extract(size_type sp, size_type ep) const
{
  if(sp == 0 || ep > this->n)
  {
    throw std::out_of_range("rlcp_array::extract: range out of bounds");
  }
  std::vector<size_type> res;
  if(sp > ep) { return res; }
  res.reserve(ep - sp + 1);

  size_type j = sp;
  while(j <= ep)
  {
    size_type i = this->parse.phrase_of(j);
    size_type start = this->parse.phrase_start(i);
    size_type end = std::min(this->parse.phrase_end(i), ep);
    size_type copied = this->parse.copy_length(i);
    if(j - start < copied)
    {
      size_type src = this->parse.source(i);
      size_type base = this->sample_before(i), head = this->ref_value(src - 1);
      size_type copy_end = std::min(end, start + copied - 1);
      auto cur = this->ref->scan(src + (j - start));
      for(; j <= copy_end; j++) { res.push_back(base + cur.next() - head); }
    }
    if(j <= end)
    {
      auto cur = this->sample_values.scan(this->parse.literal_offset(i) + (j - start - copied) + 1);
      for(; j <= end; j++) { res.push_back(cur.next()); }
    }
  }
  return res;
}

//------------------------------------------------------------------------------
// rlcp_array queries
//------------------------------------------------------------------------------

position_value rlcp_array::scan_range_min(size_type sp, size_type ep) const
{
  std::vector<size_type> vals = this->extract(sp, ep);
  position_value best{ sp, vals[0] };
  for(size_type q = 1; q < vals.size(); q++)
  {
    if(vals[q] < best.value) { best = { sp + q, vals[q] }; }
  }
  return best;
}

position_value rlcp_array::scan_forward(size_type k, size_type from,
                                        size_type bound, bool exact) const
{
  size_type start = std::max(from, this->parse.phrase_start(k));
  size_type end = this->parse.phrase_end(k);
  if(start > end) { return { 0, 0 }; }
  std::vector<size_type> vals = this->extract(start, end);
  for(size_type q = 0; q < vals.size(); q++)
  {
    if(exact ? vals[q] == bound : vals[q] < bound) { return { start + q, vals[q] }; }
  }
  return { 0, 0 };
}

position_value rlcp_array::scan_backward(size_type k, size_type to, size_type bound) const
{
  size_type start = this->parse.phrase_start(k);
  size_type end = std::min(to, this->parse.phrase_end(k));
  if(start > end || to == 0) { return { 0, 0 }; }
  std::vector<size_type> vals = this->extract(start, end);
  for(size_type q = vals.size(); q > 0; q--)
  {
    if(vals[q - 1] < bound) { return { start + q - 1, vals[q - 1] }; }
  }
  return { 0, 0 };
}

position_value rlcp_array::rmq(size_type sp, size_type ep) const
{
  if(sp == 0 || sp > ep || ep > this->n)
  {
    throw std::invalid_argument("rlcp_array::rmq: invalid range");
  }
  size_type l = this->parse.phrase_of(sp), r = this->parse.phrase_of(ep);
  size_type inner_l = (this->parse.phrase_start(l) == sp ? l : l + 1);
  size_type inner_r = (this->parse.phrase_end(r) == ep ? r : r - 1);

  // No phrase inside the range: scan the one or two covering phrases.
  if(inner_l > inner_r) { return this->scan_range_min(sp, ep); }

  position_value leaf = this->minima.range_min(inner_l, inner_r);
  position_value best = this->scan_forward(leaf.position, 1, leaf.value, true);
  if(l < inner_l && this->minima.value_at(l) <= best.value)
  {
    position_value left = this->scan_range_min(sp, this->parse.phrase_end(l));
    if(left.value <= best.value) { best = left; }
  }
  if(r > inner_r && this->minima.value_at(r) < best.value)
  {
    position_value right = this->scan_range_min(this->parse.phrase_start(r), ep);
    if(right.value < best.value) { best = right; }
  }
  return best;
}

position_value rlcp_array::nsv_threshold(size_type i, size_type bound) const
{
  if(i == 0 || i > this->n)
  {
    throw std::out_of_range("rlcp_array::nsv_threshold: position out of range");
  }
  if(bound > 0)
  {
    size_type k = this->parse.phrase_of(i);
    position_value res = this->scan_forward(k, i + 1, bound, false);
    if(res.position != 0) { return res; }
    size_type next = this->minima.next_below(k, bound);
    if(next != 0) { return this->scan_forward(next, 1, bound, false); }
  }
  return { this->n + 1, 0 };
}

position_value rlcp_array::psv_threshold(size_type i, size_type bound) const
{
  if(i == 0 || i > this->n)
  {
    throw std::out_of_range("rlcp_array::psv_threshold: position out of range");
  }
  if(bound > 0)
  {
    size_type k = this->parse.phrase_of(i);
    position_value res = this->scan_backward(k, i - 1, bound);
    if(res.position != 0) { return res; }
    size_type prev = this->minima.prev_below(k, bound);
    if(prev != 0) { return this->scan_backward(prev, this->n, bound); }
  }
  return { 0, 0 };
}

position_value rlcp_array::nsv(size_type i) const
{
  return this->nsv_threshold(i, this->access(i).value);
}

position_value rlcp_array::nsev(size_type i) const
{
  return this->nsv_threshold(i, this->access(i).value + 1);
}

position_value rlcp_array::psv(size_type i) const
{
  return this->psv_threshold(i, this->access(i).value);
}

position_value rlcp_array::psev(size_type i) const
{
  return this->psv_threshold(i, this->access(i).value + 1);
}

//------------------------------------------------------------------------------
// rlcp_array serialization
//------------------------------------------------------------------------------

void rlcp_array::serialize(std::ostream& out) const
{
  io::blob payload;
  payload.add_u64(this->n);
  payload.add_u64(this->ref_hash);
  payload.add_structure(this->parse);
  payload.add_structure(this->sample_values);
  payload.add_structure(this->minima);
  payload.write(out, TAG_RLCP);
}

void rlcp_array::load(std::istream& in, const slarray& reference_lcp)
{
  io::reader reader(in, TAG_RLCP);
  this->n = reader.u64();
  this->ref_hash = reader.u64();
  reader.structure(this->parse);
  reader.structure(this->sample_values);
  reader.structure(this->minima);
  this->ref = &reference_lcp;
  if(lcp_fingerprint(reference_lcp) != this->ref_hash)
  {
    throw std::runtime_error("rlcp_array::load: reference LCP array does not match");
  }
  this->check_structure();
}

} // namespace rst
