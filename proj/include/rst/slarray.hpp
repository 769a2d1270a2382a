/*
 * slarray.hpp: array of small integers with escaped large values.
 *
 * Values below 255 live in a byte layer. Larger values are marked with the
 * escape byte 255 and stored in a packed large-value layer, indexed by the
 * rank of the escape among all escapes. A per-block escape count directory
 * makes that rank O(1) with a bounded scan. Suited to LCP arrays, which are
 * mostly small with rare large entries, and very fast to scan sequentially.
 */

#ifndef RST_SLARRAY_HPP
#define RST_SLARRAY_HPP

#include "int_vector.hpp"

namespace rst {

class slarray
{
public:
  static constexpr byte_type ESCAPE = 255;
  static constexpr size_type BLOCK_SIZE = 64;  // bytes per escape-rank directory block

  slarray() = default;

  explicit slarray(const std::vector<size_type>& values)
  {
    this->small.reserve(values.size());
    std::vector<size_type> big;
    size_type max_big = 0;
    for(size_type v : values)
    {
      if(v < ESCAPE) { this->small.push_back(byte_type(v)); }
      else
      {
        this->small.push_back(ESCAPE);
        big.push_back(v);
        max_big = std::max(max_big, v);
      }
    }
    if(!big.empty()) { this->large = int_vector(big, max_big); }
    this->build_directory();
  }

  size_type size() const { return this->small.size(); }

  // 1-based access.
  size_type get(size_type i) const
  {
    if(i == 0 || i > this->size()) { throw std::out_of_range("slarray::get: index out of range"); }
    byte_type b = this->small[i - 1];
    if(b < ESCAPE) { return b; }
    return this->large.get(this->escape_rank(i - 1));
  }

  // Values at positions [sp, ep]; linear scan with incremental escape rank.
  std::vector<size_type> extract(size_type sp, size_type ep) const
  {
    if(sp == 0 || ep > this->size() || sp > ep) { throw std::out_of_range("slarray::extract: bad range"); }
    std::vector<size_type> res;
    res.reserve(ep - sp + 1);
    size_type esc = this->escape_rank(sp - 1);
    for(size_type i = sp - 1; i < ep; i++)
    {
      byte_type b = this->small[i];
      if(b < ESCAPE) { res.push_back(b); }
      else { res.push_back(this->large.get(esc)); esc++; }
    }
    return res;
  }

  // Cursor for sequential scans that avoids re-ranking every step.
  class cursor
  {
  public:
    cursor(const slarray& array, size_type start) :
      parent(array), index(start - 1), esc(array.escape_rank(start - 1)) {}

    // Value at the current position, then advance.
    size_type next()
    {
      byte_type b = this->parent.small[this->index];
      this->index++;
      if(b < ESCAPE) { return b; }
      return this->parent.large.get(this->esc++);
    }

  private:
    const slarray& parent;
    size_type index, esc;
  };

  cursor scan(size_type start) const { return cursor(*this, start); }

  void serialize(std::ostream& out) const
  {
    io::blob payload;
    payload.add_bytes(this->small.data(), this->small.size());
    payload.add_structure(this->large);
    payload.write(out, TAG_SLARRAY);
  }

  void load(std::istream& in)
  {
    io::reader reader(in, TAG_SLARRAY);
    this->small = reader.byte_block();
    reader.structure(this->large);
    this->build_directory();
  }

private:
  // Escapes among small[0..i), i.e. the large-layer slot of an escape at i.
  size_type escape_rank(size_type i) const
  {
    size_type res = this->escape_counts.empty() ? 0 : this->escape_counts[i / BLOCK_SIZE];
    for(size_type j = (i / BLOCK_SIZE) * BLOCK_SIZE; j < i; j++)
    {
      res += (this->small[j] == ESCAPE);
    }
    return res;
  }

  void build_directory()
  {
    size_type blocks = this->small.size() / BLOCK_SIZE + 1;
    this->escape_counts.assign(blocks, 0);
    size_type count = 0;
    for(size_type i = 0; i < this->small.size(); i++)
    {
      if(i % BLOCK_SIZE == 0) { this->escape_counts[i / BLOCK_SIZE] = count; }
      count += (this->small[i] == ESCAPE);
    }
    for(size_type b = (this->small.size() + BLOCK_SIZE - 1) / BLOCK_SIZE; b < blocks; b++)
    {
      this->escape_counts[b] = count;
    }
  }

  std::vector<byte_type> small;
  int_vector large;
  std::vector<size_type> escape_counts;
};

} // namespace rst

#endif // RST_SLARRAY_HPP
