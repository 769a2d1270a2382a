/*
 * rlcp.hpp: relative LCP array with minima tree query support.
 *
 * The LCP array of the target is stored as an RLZ parse of its differential
 * LCP array (DLCP[1] = LCP[1], DLCP[i] = LCP[i] - LCP[i-1]) against the
 * reference's, with the mismatch literals replaced by absolute LCP values.
 * A position inside a copy region is reconstructed from the absolute sample
 * closing the previous phrase plus a difference of two reference LCP entries;
 * this works because equal DLCP runs have equal prefix sum differences.
 *
 * Every phrase ends with at least one literal (the last phrase may instead
 * end with the parse terminator), so the sample preceding a phrase is always
 * stored. A 64-ary minima tree over per-phrase minima supports rmq and
 * next/previous smaller(-or-equal) value queries; in-phrase work decompresses
 * at most one bounded phrase per query.
 */

#ifndef RST_RLCP_HPP
#define RST_RLCP_HPP

#include "rlz.hpp"
#include "slarray.hpp"

namespace rst {

// A position in LCP_S together with its value. nsv-type queries use the
// sentinels (n+1, 0) on the right and (0, 0) on the left, matching the
// virtual -infinity entries LCP[0] and LCP[n+1].
struct position_value
{
  size_type position;
  size_type value;

  bool operator==(const position_value& other) const = default;
};

// access() result; the phrase id lets sequential callers amortize work.
struct access_result
{
  size_type value;
  size_type phrase;

  bool operator==(const access_result& other) const = default;
};

/*
  64-ary minima tree over the per-phrase minima of LCP_S. Leaves hold phrase
  minima; each internal level takes 64-way minima of the level below, stored
  levelwise in one array. Node i at level j (leaves are level 1, node ids and
  levels 1-based) has parent offset(j+1) + (i - offset(j)) / 64 and first
  child offset(j-1) + 64 * (i - offset(j)).
*/
class minima_tree
{
public:
  static constexpr size_type BRANCHING = 64;

  minima_tree() = default;
  explicit minima_tree(const std::vector<size_type>& leaf_minima);

  size_type height() const { return this->offsets.size() - 2; }
  size_type nodes() const { return (this->offsets.empty() ? 0 : this->offsets.back() - 1); }
  size_type leaves() const { return (this->offsets.empty() ? 0 : this->offsets[2] - 1); }

  // First node id of level j; offset(height() + 1) is one past the root.
  size_type level_offset(size_type j) const { return this->offsets[j]; }

  size_type value_at(size_type node) const { return this->values.get(node); }

  size_type parent(size_type node, size_type level) const
  {
    return this->offsets[level + 1] + (node - this->offsets[level]) / BRANCHING;
  }

  size_type first_child(size_type node, size_type level) const
  {
    return this->offsets[level - 1] + BRANCHING * (node - this->offsets[level]);
  }

  size_type last_child(size_type node, size_type level) const
  {
    return std::min(this->first_child(node, level) + BRANCHING - 1,
                    this->offsets[level] - 1);
  }

  // Leftmost minimum over the leaf range [lo, hi]; position is a leaf id.
  position_value range_min(size_type lo, size_type hi) const;

  // Smallest leaf > leaf whose value is < bound, or 0 if none exists.
  size_type next_below(size_type leaf, size_type bound) const;

  // Largest leaf < leaf whose value is < bound, or 0 if none exists.
  size_type prev_below(size_type leaf, size_type bound) const;

  void serialize(std::ostream& out) const;
  void load(std::istream& in);

private:
  position_value scan_min(size_type lo, size_type hi) const;
  position_value level_min(size_type lo, size_type hi, size_type level) const;
  size_type descend_value(size_type node, size_type level,
                          size_type value, size_type target_level) const;
  size_type descend_below(size_type node, size_type level, size_type bound,
                          bool leftmost) const;

  slarray values;                   // node minima, levelwise from the leaves
  std::vector<size_type> offsets;   // offsets[j] = first node of level j; [0] unused
};

/*
  Relative LCP array: LCP_S relative to LCP_R. The reference LCP array is not
  owned; load() binds a caller-provided array and verifies its fingerprint.
  Construction consumes the target LCP array without retaining it.
*/
class rlcp_array
{
public:
  rlcp_array() : ref(nullptr), n(0), ref_hash(0) {}

  rlcp_array(const slarray& reference_lcp, const slarray& target_lcp,
             const rlz_params& params = rlz_params());

  // Reuses a matcher prebuilt over differentials(reference_lcp), so one
  // reference can serve many targets.
  rlcp_array(const slarray& reference_lcp, const rlz_matcher& matcher,
             const slarray& target_lcp, const rlz_params& params = rlz_params());

  // Differential form of an LCP array, the parsing domain.
  static std::vector<value_type> differentials(const slarray& lcp);

  size_type size() const { return this->n; }
  size_type phrases() const { return this->parse.phrases(); }
  const slarray* reference() const { return this->ref; }
  const rlz_parse& parsing() const { return this->parse; }
  const slarray& samples() const { return this->sample_values; }
  const minima_tree& tree() const { return this->minima; }

  // LCP_S[j] and the phrase containing position j.
  access_result access(size_type j) const;

  // LCP_S[sp, ep]; sp > ep yields an empty result.
  std::vector<size_type> extract(size_type sp, size_type ep) const;

  // Leftmost minimum of LCP_S[sp, ep].
  position_value rmq(size_type sp, size_type ep) const;

  // Next/previous value smaller than LCP_S[i], or smaller than or equal to it.
  position_value nsv(size_type i) const;
  position_value psv(size_type i) const;
  position_value nsev(size_type i) const;
  position_value psev(size_type i) const;

  // Smallest j > i (largest j < i) with LCP_S[j] < bound; the nsv family and
  // suffix tree interval expansion are both phrased in these terms.
  position_value nsv_threshold(size_type i, size_type bound) const;
  position_value psv_threshold(size_type i, size_type bound) const;

  void serialize(std::ostream& out) const;
  void load(std::istream& in, const slarray& reference_lcp);

private:
  void build(const rlz_matcher& matcher, const slarray& target_lcp,
             const rlz_params& params);
  void check_structure() const;

  // LCP_R[k] with the virtual LCP_R[0] = 0.
  size_type ref_value(size_type k) const { return (k == 0 ? 0 : this->ref->get(k)); }

  // LCP_S at the position preceding phrase i: the literal closing phrase
  // i - 1, or 0 for the first phrase.
  size_type sample_before(size_type i) const
  {
    return (i == 1 ? 0 : this->sample_values.get(this->parse.literal_offset(i)));
  }

  // Leftmost position in phrase k with value < bound (or == value when exact),
  // restricted to positions >= from; position 0 if none.
  position_value scan_forward(size_type k, size_type from, size_type bound, bool exact) const;

  // Rightmost position in phrase k with value < bound, at positions <= to.
  position_value scan_backward(size_type k, size_type to, size_type bound) const;

  // Leftmost minimum of LCP_S[sp, ep] by sequential decompression.
  position_value scan_range_min(size_type sp, size_type ep) const;

  const slarray* ref;
  size_type n;
  size_type ref_hash;
  rlz_parse parse;
  slarray sample_values;   // absolute LCP_S values, one per literal slot
  minima_tree minima;
};

} // namespace rst

#endif // RST_RLCP_HPP
