/*
 * rlz.hpp: relative Lempel-Ziv parsing over integer token sequences.
 *
 * The parser is generic over 64-bit signed tokens so the same machinery
 * compresses byte sequences and differential LCP arrays. A target S is
 * parsed against a reference R into phrases w_i = (p_i, l_i, c_i): a copy
 * of R[p_i, p_i + l_i - 1] followed by one or more mismatch literals. The
 * last phrase is closed by an implicit terminator literal when the final
 * copy runs to the end of S.
 *
 * Longest matches come from backward search on an index of the reversed
 * reference; among equally long matches the smallest source position wins.
 * After each phrase a bounded window of start positions and source shifts
 * is probed for a match whose relative offset is near the previous explicit
 * offset; such phrases store a 16-bit offset delta instead of a full offset,
 * and any skipped positions become extra literals of the previous phrase.
 */

#ifndef RST_RLZ_HPP
#define RST_RLZ_HPP

#include "fm_index.hpp"
#include "sparse_bitvector.hpp"

namespace rst {

// Distinguished token closing the last phrase when no real mismatch exists.
constexpr value_type RLZ_TERMINATOR = std::numeric_limits<value_type>::min();

struct rlz_params
{
  size_type max_phrase_length = 1024;  // copy length cap
  size_type probe_starts = 32;         // lookahead window of phrase starts
  size_type probe_shift = 32;          // source shifts tried around the anchor
  size_type min_probe_length = 4;      // shortest acceptable probed match
};

// Matching engine: index of the reversed reference plus the raw tokens.
// Construction-time only; parses do not retain it.
class rlz_matcher
{
public:
  explicit rlz_matcher(std::vector<value_type> reference);

  size_type size() const { return this->ref_raw.size(); }
  const std::vector<value_type>& reference() const { return this->ref_raw; }

  // Token id in the reference alphabet; foreign values get the id one past
  // the alphabet so they can never match.
  symbol_type id_of(value_type v) const;

  // Longest match for target[from..] (1-based, ids), capped at max_len.
  // Returns (length, source); source is the smallest matching position.
  std::pair<size_type, size_type> longest_match(const std::vector<symbol_type>& target_ids,
                                                size_type from, size_type max_len) const;

  // Longest common extension of target_ids[from..] and the reference at
  // source, capped at max_len.
  size_type extension(const std::vector<symbol_type>& target_ids,
                      size_type from, size_type source, size_type max_len) const;

  std::vector<symbol_type> map_target(const std::vector<value_type>& target) const;

private:
  std::vector<value_type> ref_raw;
  std::vector<value_type> alphabet;     // sorted distinct reference values
  std::vector<symbol_type> ref_ids;     // 1-based ids, reference order

  // Index of the reversed reference (with a 0 sentinel appended).
  std::vector<size_type> rev_sa;
  wavelet_tree rev_bwt;
  std::vector<size_type> rev_c;

  // Sparse table of range maxima over rev_sa, for the source tie-break.
  std::vector<std::vector<std::uint32_t>> max_table;

  size_type range_max(size_type sp, size_type ep) const;
};

class rlz_parse
{
public:
  rlz_parse() : target_length(0), terminated(false) {}

  static rlz_parse parse(const rlz_matcher& reference, const std::vector<value_type>& target,
                         const rlz_params& params = rlz_params());

  static rlz_parse parse(const std::vector<value_type>& reference,
                         const std::vector<value_type>& target,
                         const rlz_params& params = rlz_params());

  size_type size() const { return this->target_length; }
  size_type phrases() const { return this->differential.size(); }
  bool has_terminator() const { return this->terminated; }

  // Phrase containing target position j.
  size_type phrase_of(size_type j) const { return this->starts.rank1(j); }

  size_type phrase_start(size_type i) const { return this->starts.select1(i); }

  size_type phrase_end(size_type i) const
  {
    return (i == this->phrases() ? this->target_length : this->phrase_start(i + 1) - 1);
  }

  // Decoded relative offset W_r[i]; source position is offset + start.
  value_type offset(size_type i) const;

  size_type copy_length(size_type i) const;

  size_type source(size_type i) const
  {
    return size_type(this->offset(i) + value_type(this->phrase_start(i)));
  }

  bool is_differential(size_type i) const { return this->differential.bit(i); }

  // Literal slots of phrase i, including a possible terminator slot.
  size_type literal_count(size_type i) const
  {
    return this->literal_sums(i) - this->literal_sums(i - 1);
  }

  // Literal slots before phrase i: the base slot for derived value arrays.
  size_type literal_offset(size_type i) const { return this->literal_sums(i - 1); }

  value_type literal(size_type slot) const;

  // target[j].
  value_type access(size_type j, const std::vector<value_type>& reference) const;

  // All tokens of phrase i; the last phrase may end with RLZ_TERMINATOR.
  std::vector<value_type> decompress_phrase(size_type i,
                                            const std::vector<value_type>& reference) const;

  void serialize(std::ostream& out) const;
  void load(std::istream& in);

  // Storage for derived structures that replace the generic literals (the
  // relative LCP array stores absolute values instead).
  void drop_literals() { this->literals = int_vector(); }

private:
  friend class rlz_builder;

  size_type literal_sums(size_type i) const { return (i == 0 ? 0 : this->literal_slots.get(i - 1)); }

  size_type target_length;
  bool terminated;
  sparse_bitvector starts;        // phrase start positions in the target
  bitvector differential;        // 1 = offset stored as a delta
  int_vector explicit_offsets;    // zigzag-coded offsets of explicit phrases
  int_vector delta_offsets;       // 16-bit biased deltas of differential phrases
  int_vector literal_slots;       // prefix sums of literal slots per phrase
  int_vector literals;            // zigzag-coded literal values
};

// Zigzag coding for signed values in packed arrays.
inline size_type zigzag_encode(value_type v)
{
  return (size_type(v) << 1) ^ size_type(v >> 63);
}

inline value_type zigzag_decode(size_type u)
{
  return value_type(u >> 1) ^ -value_type(u & 1);
}

} // namespace rst

#endif // RST_RLZ_HPP
