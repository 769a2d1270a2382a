/*
 * relative_fm.hpp: FM-index of a target sequence relative to a reference.
 *
 * The index stores a common subsequence of BWT_R and BWT_S as a pair of mark
 * bitvectors plus wavelet trees over the two complements. rank on BWT_S then
 * reduces to rank on BWT_R and the complements, which is enough for LF and
 * backward search. The full variant additionally requires the subsequence to
 * be bwt-invariant: pairing the k-th marks of both sides must order suffixes
 * identically in both suffix arrays. That alignment, translated to the
 * original sequences, turns locate/extract into reference queries plus short
 * LF walks. Sparse SA/ISA samples cover target regions absent from the
 * reference.
 *
 * Construction of the full variant matches each reference suffix with the
 * lexicographically adjacent target suffixes (via the merging bitvector of
 * the mutual suffix order), picks a longest increasing subsequence of the
 * match values, and converts the resulting text alignment into the BWT
 * alignment by synchronized backward traversals. The basic variant instead
 * approximates the longest common subsequence of the BWTs per lexicographic
 * context block; it is usually longer but supports only rank-based queries.
 */

#ifndef RST_RELATIVE_FM_HPP
#define RST_RELATIVE_FM_HPP

#include "adaptive_bitvector.hpp"
#include "fm_index.hpp"

namespace rst {

class rselect;

// Marks a common subsequence of two token sequences: the k-th one of `left`
// pairs with the k-th one of `right`, and the paired tokens are equal.
struct align_pair
{
  adaptive_bitvector left, right;

  size_type pairs() const { return this->left.count_ones(); }

  // Popcount equality; throws on violated structure.
  void check() const
  {
    if(this->left.count_ones() != this->right.count_ones())
    {
      throw std::runtime_error("align_pair: mark counts differ between the sides");
    }
  }
};

struct rfm_params
{
  bool full = true;
  size_type sa_interval = 257;    // suffix-order SA samples; a prime avoids run resonance
  size_type isa_interval = 512;   // text-order ISA samples
  size_type context_length = 2;   // lexicographic context depth for approx_lcs
  std::uint64_t lcs_budget = std::uint64_t(1) << 26;  // DP cell cap per context block
};

// Basic-variant alignment: partition both BWTs into blocks of equal
// lexicographic context (the first context_length characters of the suffix),
// compute a common subsequence per paired block, and concatenate. Blocks
// whose DP size exceeds the budget fall back to greedy run matching.
align_pair approx_lcs(const suffix_structures& reference, const suffix_structures& target,
                      size_type context_length = 2,
                      std::uint64_t budget = std::uint64_t(1) << 26);

// Exact LCS pairs of two byte blocks (Hirschberg recursion over bit-parallel
// LCS-length rows), as 0-based offset pairs, increasing in both coordinates.
// Exposed for testing.
std::vector<std::pair<size_type, size_type>> block_lcs_pairs(
    const std::vector<byte_type>& x, const std::vector<byte_type>& y);

// Merging bitvector of the mutual suffix order of R and S: bit i is set iff
// the i-th smallest suffix of the two texts together is a suffix of S. Equal
// suffixes order R before S. Built by backward searching S in the reference
// index, O(|S|) rank operations.
bitvector build_merging_bitvector(const fm_index& csa_r, const fm_index& csa_s);

// One maximal run of suffix matches: reference positions start .. start+length-1
// match target positions value .. value+length-1.
struct match_run
{
  size_type start, value, length;

  bool operator==(const match_run& other) const
  {
    return this->start == other.start && this->value == other.value
      && this->length == other.length;
  }
};

// Per reference text position, the target text position of the nearest target
// suffix on each side of the mutual suffix order, where the first characters
// agree; run-length encoded.
struct match_arrays
{
  size_type size = 0;               // |R|
  std::vector<match_run> left, right;

  // Value at position j, or 0 when j has no recorded match.
  size_type left_at(size_type j) const { return value_at(this->left, j); }
  size_type right_at(size_type j) const { return value_at(this->right, j); }

private:
  static size_type value_at(const std::vector<match_run>& runs, size_type j);
};

// Builds the match arrays by a backward traversal of the reference index that
// maintains j = SA_R[i], following both mutual neighbors of each suffix.
// Values come from one locate per run and LF chaining inside runs.
match_arrays build_match_arrays(const bitvector& b_rs,
                                const fm_index& csa_r, const fm_index& csa_s);

// A longest strictly increasing selection from the match arrays: marks[j-1]
// says position j contributes, values are the chosen target positions in
// increasing order, values[k] = left_at(j) or right_at(j) for the k-th mark.
struct lis_result
{
  std::vector<bool> marks;
  std::vector<size_type> values;
};

lis_result lis_select(const match_arrays& m);

// Converts a text alignment (0-based mark vectors over R and S, marking equal
// characters pair by pair) to the BWT alignment via synchronized backward
// traversals. Pairs holding the final text positions are dropped, as the
// endmarker never aligns. Increasing text pairs need not be increasing in
// both BWT coordinates (prepending unequal characters can reorder the
// suffixes), so the conversion keeps a longest subset of pairs monotone in
// BWT space; the result then satisfies the bwt-invariance condition. When
// kept_r / kept_s are given, they receive the marks of the surviving pairs.
align_pair text_align_to_bwt_align(const std::vector<bool>& b_r, const std::vector<bool>& b_s,
                                   const fm_index& csa_r, const fm_index& csa_s,
                                   std::vector<bool>* kept_r = nullptr,
                                   std::vector<bool>* kept_s = nullptr);

class relative_fm
{
public:
  relative_fm() : ref(nullptr), n(0), is_full(false) {}

  // Builds the index for `target` against `reference`; `reference_index` must
  // index exactly `reference` and must outlive the relative index.
  relative_fm(const fm_index& reference_index,
              const text_type& reference, const text_type& target,
              const rfm_params& params = rfm_params());

  size_type size() const { return this->n; }
  bool full() const { return this->is_full; }
  const fm_index& reference() const { return *(this->ref); }

  // Number of aligned positions between the BWTs.
  size_type lcs_length() const { return this->align_bwt.pairs(); }

  const align_pair& bwt_alignment() const { return this->align_bwt; }
  const align_pair& text_alignment() const { return this->align_text; }
  const wavelet_tree& complement_r() const { return this->clcs_r; }
  const wavelet_tree& complement_s() const { return this->clcs_s; }
  const c_array_type& c_values() const { return this->C; }

  // BWT_S[i] through the reference or the target complement.
  byte_type bwt_at(size_type i) const
  {
    if(this->align_bwt.right.bit(i))
    {
      size_type k = this->align_bwt.right.rank1(i);
      return byte_type(this->ref->bwt_at(this->align_bwt.left.select1(k)));
    }
    return byte_type(this->clcs_s.access(this->align_bwt.right.rank0(i)));
  }

  // Occurrences of c in BWT_S[1, i]: marked occurrences counted in BWT_R
  // minus its complement, unmarked ones in the target complement.
  size_type rank(byte_type c, size_type i) const
  {
    size_type k = this->align_bwt.right.rank1(i);
    size_type j = (k == 0 ? 0 : this->align_bwt.left.select1(k));
    return this->ref->bwt_rank(c, j) - this->clcs_r.rank(c, j - k)
      + this->clcs_s.rank(c, i - k);
  }

  // Position of the j-th occurrence of c in BWT_S. Uses the relative select
  // structure when given one, otherwise binary search over rank.
  size_type select(byte_type c, size_type j, const rselect* rs = nullptr) const;

  size_type lf(size_type i) const
  {
    byte_type c = this->bwt_at(i);
    return this->C[c] + this->rank(c, i);
  }

  size_type psi(size_type i, const rselect* rs = nullptr) const
  {
    byte_type c = c_array_inverse(this->C, i);
    return this->select(c, i - this->C[c], rs);
  }

  range_type backward_step(range_type range, byte_type c) const
  {
    return
    {
      this->C[c] + this->rank(c, range.first - 1) + 1,
      this->C[c] + this->rank(c, range.second)
    };
  }

  range_type find(const text_type& pattern) const;

  // SA_S[i] and ISA_S[p]; full variant only. The locate walk stops at an
  // aligned position or an SA sample, whichever comes first; aligned
  // positions resolve through one reference locate.
  size_type locate(size_type i) const;
  std::vector<size_type> locate(range_type range) const;
  size_type isa(size_type p) const;

  // S[i, j] inclusive; full variant only.
  text_type extract(size_type i, size_type j) const;

  void serialize(std::ostream& out) const;

  // Binds the loaded index to its reference; structural self-checks throw on
  // mismatched or corrupt input.
  void load(std::istream& in, const fm_index& reference_index);

private:
  void build_complements(const text_type& bwt_s);
  void check_structure() const;

  const fm_index* ref;
  size_type n;
  bool is_full;
  rfm_params params;

  wavelet_tree clcs_r, clcs_s;        // complement subsequences of the BWTs
  c_array_type c_clcs_r, c_clcs_s;    // their C arrays
  align_pair align_bwt;               // left over BWT_R, right over BWT_S
  align_pair align_text;              // full: left over R, right over S
  int_vector sa_samples;              // full: SA_S at indexes 1, 1+d, ...
  int_vector isa_samples;             // full: ISA_S at positions 1, 1+d, ...; last entry is ISA_S[n]
  c_array_type C;                     // C_S; stored in the full variant, derived otherwise
};

// Optional relative select structure: marks the aligned positions in the
// F columns of both BWTs, which turns select on BWT_S into select on BWT_R
// or on the target complement.
class rselect
{
public:
  rselect() {}
  rselect(const relative_fm& rfm);

  // select_c(BWT_S, j).
  size_type select(const relative_fm& rfm, byte_type c, size_type j) const;

  const align_pair& f_alignment() const { return this->f_marks; }
  const c_array_type& lcs_counts() const { return this->c_lcs; }

  void serialize(std::ostream& out) const;
  void load(std::istream& in);

private:
  align_pair f_marks;      // left over F_R, right over F_S
  c_array_type c_lcs;      // C array of the common subsequence
};

} // namespace rst

#endif // RST_RELATIVE_FM_HPP
