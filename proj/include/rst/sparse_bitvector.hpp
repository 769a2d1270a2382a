/*
 * sparse_bitvector.hpp: Elias-Fano encoded bitvector for sparse bit sets.
 *
 * Set-bit positions are split into low bits (packed array) and high bits
 * (unary-coded in a plain bitvector). Space is roughly z * (2 + log(n/z))
 * bits for z ones out of n. Supports the same 1-based rank/select algebra
 * as bitvector.
 */

#ifndef RST_SPARSE_BITVECTOR_HPP
#define RST_SPARSE_BITVECTOR_HPP

#include "bitvector.hpp"
#include "int_vector.hpp"

namespace rst {

class sparse_bitvector
{
public:
  sparse_bitvector() : n(0), z(0), low_width(1) {}

  // positions: strictly increasing 1-based positions of the set bits.
  sparse_bitvector(const std::vector<size_type>& positions, size_type n)
  {
    this->build(positions, n);
  }

  void build(const std::vector<size_type>& positions, size_type n)
  {
    this->n = n; this->z = positions.size();
    this->low_width = 1;
    if(this->z > 0)
    {
      size_type avg = std::max<size_type>(1, n / this->z);
      this->low_width = std::max<size_type>(1, bit_width(avg) - 1);
    }
    this->low.resize(this->z, this->low_width);
    std::vector<bool> high_bits;
    size_type prev_high = 0, prev_pos = 0;
    for(size_type i = 0; i < this->z; i++)
    {
      size_type pos = positions[i];
      if(pos == 0 || pos > n || pos <= prev_pos)
      {
        throw std::invalid_argument("sparse_bitvector: positions must be strictly increasing in [1, n]");
      }
      prev_pos = pos;
      size_type v = pos - 1;
      size_type h = v >> this->low_width;
      for(size_type b = prev_high; b < h; b++) { high_bits.push_back(false); }
      high_bits.push_back(true);
      prev_high = h;
      this->low.set(i, v & ((size_type(1) << this->low_width) - 1));
    }
    this->high = bitvector(std::vector<bool>(high_bits.begin(), high_bits.end()));
  }

  size_type size() const { return this->n; }
  size_type count_ones() const { return this->z; }

  bool bit(size_type i) const
  {
    size_type r = this->rank1(i);
    return r > 0 && this->select1(r) == i;
  }

  size_type select1(size_type j) const
  {
    if(j == 0 || j > this->z) { throw std::out_of_range("sparse_bitvector::select1: no such occurrence"); }
    size_type h = this->high.select1(j) - j;  // zeros before the j-th one = high value
    return ((h << this->low_width) | this->low.get(j - 1)) + 1;
  }

  // Binary search over select1; O(log z) with cheap per-step selects.
  size_type rank1(size_type i) const
  {
    if(i > this->n) { throw std::out_of_range("sparse_bitvector::rank1: position out of range"); }
    if(this->z == 0 || i == 0) { return 0; }
    size_type lo = 1, hi = this->z, res = 0;
    while(lo <= hi)
    {
      size_type mid = lo + (hi - lo) / 2;
      if(this->select1(mid) <= i) { res = mid; lo = mid + 1; }
      else { if(mid == 1) { break; } hi = mid - 1; }
    }
    return res;
  }

  size_type rank0(size_type i) const { return i - this->rank1(i); }

  size_type rank(size_type i, bool v) const { return v ? this->rank1(i) : this->rank0(i); }

  size_type select0(size_type j) const
  {
    if(j == 0 || j > this->n - this->z) { throw std::out_of_range("sparse_bitvector::select0: no such occurrence"); }
    // Binary search for the smallest position with rank0 >= j.
    size_type lo = 1, hi = this->n;
    while(lo < hi)
    {
      size_type mid = lo + (hi - lo) / 2;
      if(this->rank0(mid) >= j) { hi = mid; } else { lo = mid + 1; }
    }
    return lo;
  }

  size_type select(size_type j, bool v) const { return v ? this->select1(j) : this->select0(j); }

  void serialize(std::ostream& out) const
  {
    io::blob payload;
    payload.add_u64(this->n);
    payload.add_u64(this->z);
    payload.add_u64(this->low_width);
    payload.add_structure(this->low);
    payload.add_structure(this->high);
    payload.write(out, TAG_SPARSE_BV);
  }

  void load(std::istream& in)
  {
    io::reader reader(in, TAG_SPARSE_BV);
    this->n = reader.u64();
    this->z = reader.u64();
    this->low_width = reader.u64();
    reader.structure(this->low);
    reader.structure(this->high);
  }

private:
  size_type n, z, low_width;
  int_vector low;
  bitvector high;
};

} // namespace rst

#endif // RST_SPARSE_BITVECTOR_HPP
