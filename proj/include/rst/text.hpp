/*
 * text.hpp: byte texts and their suffix structures.
 *
 * A text is a byte sequence T[1, n] whose last symbol, and only that symbol,
 * is the endmarker 0. suffix_structures bundles the suffix array, its inverse,
 * the LCP array (Kasai construction) and the BWT; construction is shared by
 * the indexes and by the relative construction algorithms.
 */

#ifndef RST_TEXT_HPP
#define RST_TEXT_HPP

#include "slarray.hpp"

namespace rst {

typedef std::vector<byte_type> text_type;

constexpr byte_type ENDMARKER = 0;

// Checks the endmarker invariant: nonempty, 0 occurs exactly once, at the end.
void validate_text(const text_type& text);

// Appends the endmarker to a raw sequence (which must not contain one).
text_type with_endmarker(const text_type& sequence);

// Generic suffix array over an integer sequence, prefix-doubling built on
// std::sort. Returns 1-based positions in 1-based rank slots (slot i-1 holds
// SA[i]). The sequence must end with a unique minimal sentinel.
std::vector<size_type> build_suffix_array(const std::vector<symbol_type>& seq);

struct suffix_structures
{
  text_type text;
  std::vector<size_type> sa;    // sa[i-1] = SA[i], 1-based positions
  std::vector<size_type> isa;   // isa[p-1] = ISA[p]
  std::vector<size_type> lcp;   // lcp[i-1] = LCP[i]; LCP[1] = 0
  text_type bwt;                // bwt[i-1] = BWT[i] = T[SA[i] - 1], wrapping

  size_type size() const { return this->text.size(); }
};

// Builds all suffix structures of a validated text.
suffix_structures build_suffix_structures(const text_type& text);

// LCP array from text + SA + ISA by Kasai's PLCP scan.
std::vector<size_type> build_lcp_array(const text_type& text,
                                       const std::vector<size_type>& sa,
                                       const std::vector<size_type>& isa);

} // namespace rst

#endif // RST_TEXT_HPP
