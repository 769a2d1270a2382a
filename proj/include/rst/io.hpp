/*
 * io.hpp: serialization primitives.
 *
 * Every structure serializes as: tag byte, 64-bit little-endian payload length
 * (in bytes), then the payload. Payload scalars are 64-bit little-endian words;
 * byte arrays are written raw and padded to a word boundary. This makes files
 * bit-exact across platforms.
 */

#ifndef RST_IO_HPP
#define RST_IO_HPP

#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "common.hpp"

namespace rst {

// Structure tags.
enum struct_tag : byte_type
{
  TAG_BITVECTOR      = 0x01,
  TAG_SPARSE_BV      = 0x02,
  TAG_SLARRAY        = 0x03,
  TAG_WAVELET_TREE   = 0x04,
  TAG_INT_VECTOR     = 0x05,
  TAG_ADAPTIVE_BV    = 0x06,
  TAG_TEXT           = 0x07,
  TAG_FM_INDEX       = 0x10,
  TAG_RLZ_PARSE      = 0x11,
  TAG_RELATIVE_FM    = 0x12,
  TAG_RSELECT        = 0x13,
  TAG_RLCP           = 0x14
};

namespace io {

inline void write_u64(std::ostream& out, std::uint64_t v)
{
  byte_type buf[8];
  for(int i = 0; i < 8; i++) { buf[i] = (v >> (8 * i)) & 0xFF; }
  out.write(reinterpret_cast<const char*>(buf), 8);
}

inline std::uint64_t read_u64(std::istream& in)
{
  byte_type buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if(!in) { throw std::runtime_error("io: unexpected end of stream"); }
  std::uint64_t v = 0;
  for(int i = 0; i < 8; i++) { v |= std::uint64_t(buf[i]) << (8 * i); }
  return v;
}

inline void write_byte(std::ostream& out, byte_type b)
{
  out.write(reinterpret_cast<const char*>(&b), 1);
}

inline byte_type read_byte(std::istream& in)
{
  byte_type b = 0;
  in.read(reinterpret_cast<char*>(&b), 1);
  if(!in) { throw std::runtime_error("io: unexpected end of stream"); }
  return b;
}

// Serialized payload under construction. Scalars become LE words; byte blocks
// are padded to 8 bytes so the payload is always a whole number of words.
class blob
{
public:
  void add_u64(std::uint64_t v)
  {
    for(int i = 0; i < 8; i++) { this->bytes.push_back((v >> (8 * i)) & 0xFF); }
  }

  void add_bytes(const byte_type* data, size_type n)
  {
    this->add_u64(n);
    this->bytes.insert(this->bytes.end(), data, data + n);
    while(this->bytes.size() % 8 != 0) { this->bytes.push_back(0); }
  }

  void add_words(const std::vector<std::uint64_t>& words)
  {
    this->add_u64(words.size());
    for(std::uint64_t w : words) { this->add_u64(w); }
  }

  // Nested structure: the callee writes its own tag/length/payload.
  template<class Structure>
  void add_structure(const Structure& s)
  {
    std::basic_string<char> tmp;
    {
      std::ostringstream stream;
      s.serialize(stream);
      tmp = stream.str();
    }
    this->bytes.insert(this->bytes.end(), tmp.begin(), tmp.end());
    while(this->bytes.size() % 8 != 0) { this->bytes.push_back(0); }
  }

  void write(std::ostream& out, struct_tag tag) const
  {
    write_byte(out, byte_type(tag));
    write_u64(out, this->bytes.size());
    out.write(reinterpret_cast<const char*>(this->bytes.data()), this->bytes.size());
  }

  size_type size() const { return this->bytes.size(); }

private:
  std::vector<byte_type> bytes;
};

// Reader for one serialized structure: checks the tag and tracks the payload.
class reader
{
public:
  reader(std::istream& in, struct_tag expected) : stream(in)
  {
    byte_type tag = read_byte(in);
    if(tag != byte_type(expected))
    {
      throw std::runtime_error("io: corrupt stream, unexpected structure tag "
        + std::to_string(int(tag)));
    }
    this->remaining = read_u64(in);
  }

  std::uint64_t u64()
  {
    this->consume(8);
    return read_u64(this->stream);
  }

  std::vector<byte_type> byte_block()
  {
    std::uint64_t n = this->u64();
    std::vector<byte_type> data(n);
    size_type padded = (n + 7) / 8 * 8;
    this->consume(padded);
    this->stream.read(reinterpret_cast<char*>(data.data()), n);
    this->stream.ignore(padded - n);
    if(!this->stream) { throw std::runtime_error("io: unexpected end of stream"); }
    return data;
  }

  std::vector<std::uint64_t> words()
  {
    std::uint64_t n = this->u64();
    this->consume(8 * n);
    std::vector<std::uint64_t> data(n);
    for(std::uint64_t i = 0; i < n; i++) { data[i] = read_u64(this->stream); }
    return data;
  }

  // Nested structures consume an unknown amount; account for them afterwards.
  template<class Structure>
  void structure(Structure& s)
  {
    std::streampos before = this->stream.tellg();
    s.load(this->stream);
    std::streampos after = this->stream.tellg();
    size_type used = size_type(after - before);
    size_type padded = (used + 7) / 8 * 8;
    this->stream.ignore(padded - used);
    this->consume(padded);
  }

private:
  void consume(size_type n)
  {
    if(n > this->remaining) { throw std::runtime_error("io: corrupt stream, payload overrun"); }
    this->remaining -= n;
  }

  std::istream& stream;
  size_type remaining;
};

// Serialized size in bytes, for space reporting.
template<class Structure>
size_type serialized_size(const Structure& s)
{
  std::ostringstream stream;
  s.serialize(stream);
  return size_type(stream.str().size());
}

} // namespace io
} // namespace rst

#endif // RST_IO_HPP
