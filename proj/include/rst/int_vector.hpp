/*
 * int_vector.hpp: fixed-width packed integer array.
 *
 * Stores n values of `width` bits each (1..64) in a flat word array. Used for
 * suffix array samples, phrase offsets, and other value arrays where a full
 * 64-bit word per entry would dominate the space budget.
 */

#ifndef RST_INT_VECTOR_HPP
#define RST_INT_VECTOR_HPP

#include "common.hpp"
#include "io.hpp"

namespace rst {

class int_vector
{
public:
  int_vector() : n(0), width(1) {}

  int_vector(size_type n, size_type width) { this->resize(n, width); }

  // Packs the values with the smallest width that fits max_value.
  explicit int_vector(const std::vector<size_type>& values, size_type max_value = 0)
  {
    if(max_value == 0) { for(size_type v : values) { max_value = std::max(max_value, v); } }
    this->resize(values.size(), bit_width(max_value));
    for(size_type i = 0; i < values.size(); i++) { this->set(i, values[i]); }
  }

  void resize(size_type n, size_type width)
  {
    if(width == 0 || width > 64) { throw std::invalid_argument("int_vector: width must be 1..64"); }
    this->n = n; this->width = width;
    this->data.assign(words_for_bits(n * width), 0);
  }

  size_type size() const { return this->n; }
  size_type bits() const { return this->width; }

  // 0-based access; the packed layer is an internal building block.
  size_type get(size_type i) const
  {
    size_type bit = i * this->width;
    size_type word = bit / WORD_BITS, offset = bit % WORD_BITS;
    size_type value = this->data[word] >> offset;
    if(offset + this->width > WORD_BITS)
    {
      value |= this->data[word + 1] << (WORD_BITS - offset);
    }
    if(this->width < WORD_BITS) { value &= (size_type(1) << this->width) - 1; }
    return value;
  }

  void set(size_type i, size_type value)
  {
    size_type bit = i * this->width;
    size_type word = bit / WORD_BITS, offset = bit % WORD_BITS;
    size_type mask = (this->width < WORD_BITS ? (size_type(1) << this->width) - 1 : ~size_type(0));
    value &= mask;
    this->data[word] &= ~(mask << offset);
    this->data[word] |= value << offset;
    if(offset + this->width > WORD_BITS)
    {
      size_type spill = WORD_BITS - offset;
      this->data[word + 1] &= ~(mask >> spill);
      this->data[word + 1] |= value >> spill;
    }
  }

  void serialize(std::ostream& out) const
  {
    io::blob payload;
    payload.add_u64(this->n);
    payload.add_u64(this->width);
    payload.add_words(this->data);
    payload.write(out, TAG_INT_VECTOR);
  }

  void load(std::istream& in)
  {
    io::reader reader(in, TAG_INT_VECTOR);
    this->n = reader.u64();
    this->width = reader.u64();
    this->data = reader.words();
  }

  bool operator==(const int_vector& other) const
  {
    return this->n == other.n && this->width == other.width && this->data == other.data;
  }

private:
  size_type n, width;
  std::vector<std::uint64_t> data;
};

} // namespace rst

#endif // RST_INT_VECTOR_HPP
