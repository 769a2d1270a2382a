/*
 * bitvector.hpp: plain bitvector with rank/select support.
 *
 * Rank uses a two-level directory: cumulative counts per 512-bit superblock
 * plus per-word popcounts inside the superblock. Select binary-searches the
 * superblock directory and then scans at most eight words.
 *
 * All query positions are 1-based; rank_v(i) counts positions j <= i with
 * bit j equal to v, so rank1(i) + rank0(i) = i for 0 <= i <= size().
 */

#ifndef RST_BITVECTOR_HPP
#define RST_BITVECTOR_HPP

#include <bit>

#include "common.hpp"
#include "io.hpp"

namespace rst {

class bitvector
{
public:
  static constexpr size_type WORDS_PER_BLOCK = 8;  // 512-bit superblocks

  bitvector() : n(0) {}

  explicit bitvector(const std::vector<bool>& bits) : n(bits.size())
  {
    this->data.assign(words_for_bits(this->n), 0);
    for(size_type i = 0; i < this->n; i++)
    {
      if(bits[i]) { this->data[i / WORD_BITS] |= size_type(1) << (i % WORD_BITS); }
    }
    this->build_rank();
  }

  // Takes ownership of raw words; bits beyond n must be zero.
  bitvector(std::vector<std::uint64_t> words, size_type n) : n(n), data(std::move(words))
  {
    this->data.resize(words_for_bits(n), 0);
    if(n % WORD_BITS != 0 && !this->data.empty())
    {
      this->data.back() &= (size_type(1) << (n % WORD_BITS)) - 1;
    }
    this->build_rank();
  }

  size_type size() const { return this->n; }

  size_type count_ones() const { return this->block_ranks.empty() ? 0 : this->block_ranks.back(); }

  // 1-based access.
  bool bit(size_type i) const
  {
    return (this->data[(i - 1) / WORD_BITS] >> ((i - 1) % WORD_BITS)) & 1;
  }

  // Number of set bits in the prefix of length i (0 <= i <= n).
  size_type rank1(size_type i) const
  {
    if(i == 0) { return 0; }
    if(i > this->n) { throw std::out_of_range("bitvector::rank1: position out of range"); }
    size_type word = i / WORD_BITS, offset = i % WORD_BITS;
    size_type res = this->block_ranks[word / WORDS_PER_BLOCK];
    for(size_type w = (word / WORDS_PER_BLOCK) * WORDS_PER_BLOCK; w < word; w++)
    {
      res += std::popcount(this->data[w]);
    }
    if(offset > 0)
    {
      res += std::popcount(this->data[word] & ((size_type(1) << offset) - 1));
    }
    return res;
  }

  size_type rank0(size_type i) const
  {
    if(i > this->n) { throw std::out_of_range("bitvector::rank0: position out of range"); }
    return i - this->rank1(i);
  }

  size_type rank(size_type i, bool v) const { return v ? this->rank1(i) : this->rank0(i); }

  // Position of the j-th set bit (1-based); throws if j is out of range.
  size_type select1(size_type j) const
  {
    if(j == 0 || j > this->count_ones())
    {
      throw std::out_of_range("bitvector::select1: no such occurrence");
    }
    // Find the superblock holding the j-th one.
    size_type lo = 0, hi = this->block_ranks.size() - 1;
    while(lo < hi)
    {
      size_type mid = lo + (hi - lo + 1) / 2;
      if(this->block_ranks[mid] < j) { lo = mid; } else { hi = mid - 1; }
    }
    size_type remaining = j - this->block_ranks[lo];
    for(size_type w = lo * WORDS_PER_BLOCK; ; w++)
    {
      size_type ones = std::popcount(this->data[w]);
      if(ones >= remaining) { return w * WORD_BITS + select_in_word(this->data[w], remaining) + 1; }
      remaining -= ones;
    }
  }

  size_type select0(size_type j) const
  {
    if(j == 0 || j > this->n - this->count_ones())
    {
      throw std::out_of_range("bitvector::select0: no such occurrence");
    }
    size_type lo = 0, hi = this->block_ranks.size() - 1;
    while(lo < hi)
    {
      size_type mid = lo + (hi - lo + 1) / 2;
      size_type zeros = mid * WORDS_PER_BLOCK * WORD_BITS - this->block_ranks[mid];
      if(zeros < j) { lo = mid; } else { hi = mid - 1; }
    }
    size_type remaining = j - (lo * WORDS_PER_BLOCK * WORD_BITS - this->block_ranks[lo]);
    for(size_type w = lo * WORDS_PER_BLOCK; ; w++)
    {
      size_type zeros = std::popcount(~this->data[w]);
      if(zeros >= remaining) { return w * WORD_BITS + select_in_word(~this->data[w], remaining) + 1; }
      remaining -= zeros;
    }
  }

  size_type select(size_type j, bool v) const { return v ? this->select1(j) : this->select0(j); }

  void serialize(std::ostream& out) const
  {
    io::blob payload;
    payload.add_u64(this->n);
    payload.add_words(this->data);
    payload.write(out, TAG_BITVECTOR);
  }

  void load(std::istream& in)
  {
    io::reader reader(in, TAG_BITVECTOR);
    this->n = reader.u64();
    this->data = reader.words();
    this->build_rank();
  }

  bool operator==(const bitvector& other) const
  {
    return this->n == other.n && this->data == other.data;
  }

private:
  void build_rank()
  {
    size_type blocks = this->data.size() / WORDS_PER_BLOCK + 1;
    this->block_ranks.assign(blocks + 1, 0);
    size_type ones = 0;
    for(size_type w = 0; w < this->data.size(); w++)
    {
      if(w % WORDS_PER_BLOCK == 0) { this->block_ranks[w / WORDS_PER_BLOCK] = ones; }
      ones += std::popcount(this->data[w]);
    }
    for(size_type b = this->data.size() / WORDS_PER_BLOCK + (this->data.size() % WORDS_PER_BLOCK != 0);
        b < this->block_ranks.size(); b++)
    {
      this->block_ranks[b] = ones;
    }
  }

  // 0-based position of the r-th set bit inside a word (r >= 1).
  static size_type select_in_word(std::uint64_t word, size_type r)
  {
    for(size_type i = 0; ; i++)
    {
      if(word & 1) { if(--r == 0) { return i; } }
      word >>= 1;
    }
  }

  size_type n;
  std::vector<std::uint64_t> data;
  std::vector<size_type> block_ranks;  // cumulative ones before each superblock
};

} // namespace rst

#endif // RST_BITVECTOR_HPP
