/*
 * fm_index.hpp: FM-index over a byte text.
 *
 * The BWT is stored in a Huffman-shaped wavelet tree next to the C array of
 * cumulative symbol counts. Pattern matching uses backward search; locate and
 * extract use sampled (inverse) suffix arrays. SA samples come in two flavors:
 *
 *  - suffix order (default): SA[i] is sampled when (i - 1) is divisible by the
 *    sample interval; locate walks LF until it hits a sampled index. Prime
 *    intervals avoid resonance with long runs in the text.
 *  - text order: text positions 1, 1+d, ... are sampled and their SA indexes
 *    marked in a bitvector, which bounds the LF walk by d steps.
 *
 * ISA samples are always in text order. All positions and ranks are 1-based.
 */

#ifndef RST_FM_INDEX_HPP
#define RST_FM_INDEX_HPP

#include <array>

#include "text.hpp"
#include "wavelet_tree.hpp"

namespace rst {

constexpr size_type SIGMA = 256;

// C[c] = number of text symbols smaller than c; C[SIGMA] = n.
typedef std::array<size_type, SIGMA + 1> c_array_type;

c_array_type c_array_from_counts(const std::array<size_type, SIGMA>& counts);

// Largest c with C[c] < i; inverts F-column positions to symbols.
byte_type c_array_inverse(const c_array_type& C, size_type i);

enum sa_sample_mode : size_type { SAMPLE_SUFFIX_ORDER = 0, SAMPLE_TEXT_ORDER = 1 };

struct fm_params
{
  size_type sa_interval = 17;
  size_type isa_interval = 64;
  sa_sample_mode mode = SAMPLE_SUFFIX_ORDER;
};

class fm_index
{
public:
  fm_index() : n(0) {}

  fm_index(const suffix_structures& s, const fm_params& params = fm_params());

  size_type size() const { return this->n; }

  const c_array_type& c_values() const { return this->C; }

  byte_type bwt_at(size_type i) const { return byte_type(this->bwt.access(i)); }

  // Occurrences of c in BWT[1, i].
  size_type bwt_rank(byte_type c, size_type i) const { return this->bwt.rank(c, i); }

  // Position of the j-th occurrence of c in the BWT.
  size_type bwt_select(byte_type c, size_type j) const { return this->bwt.select(c, j); }

  // LF(i): SA[LF(i)] = SA[i] - 1 (mod n).
  size_type lf(size_type i) const
  {
    byte_type c = this->bwt_at(i);
    return this->C[c] + this->bwt.rank(c, i);
  }

  // Psi(i): inverse of LF; SA[psi(i)] = SA[i] + 1 (mod n).
  size_type psi(size_type i) const
  {
    byte_type c = c_array_inverse(this->C, i);
    return this->bwt.select(c, i - this->C[c]);
  }

  // One backward-search step: suffixes in `range` preceded by c.
  range_type backward_step(range_type range, byte_type c) const
  {
    return
    {
      this->C[c] + this->bwt.rank(c, range.first - 1) + 1,
      this->C[c] + this->bwt.rank(c, range.second)
    };
  }

  // Lexicographic range of suffixes starting with the pattern.
  range_type find(const text_type& pattern) const;

  // SA[i] for one position.
  size_type locate(size_type i) const;

  // All of SA[sp..ep], in SA order.
  std::vector<size_type> locate(range_type range) const;

  // ISA[p].
  size_type isa(size_type p) const;

  // T[i, j] inclusive.
  text_type extract(size_type i, size_type j) const;

  void serialize(std::ostream& out) const;
  void load(std::istream& in);

private:
  size_type n;
  wavelet_tree bwt;
  c_array_type C;

  fm_params params;
  int_vector sa_samples;        // suffix order: every interval-th SA index
  bitvector sa_marks;           // text order: marked SA indexes
  int_vector isa_samples;       // ISA at text positions 1, 1+d, ...; last entry is ISA[n]
};

} // namespace rst

#endif // RST_FM_INDEX_HPP
