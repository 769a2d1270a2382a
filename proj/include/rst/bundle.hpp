/*
 * bundle.hpp: on-disk containers for the relative suffix tree.
 *
 * Container format (little-endian throughout):
 *
 *   magic "RST1" (4 bytes)
 *   format version, u16 (currently 1)
 *   section count, u16
 *   section table: per section a 4-byte ASCII tag, u64 payload offset
 *     (absolute), u64 payload length in bytes
 *   payloads, each followed by a trailing u32 CRC-32 (zlib polynomial) of
 *     the payload bytes; table lengths exclude the checksum
 *
 * A reference bundle holds everything shared by the targets of one
 * reference sequence R: the FM-index of R, the FM-index of the reverse of
 * R, and the LCP array of R. A target bundle holds the relative FM-index
 * and the relative LCP array of one target S, plus the optional select
 * structure. Both carry FNV-1a content hashes; a target bundle loads only
 * against the reference bundle whose text hash it was built from. The
 * reference text itself is not stored: it is recoverable from its index.
 */

#ifndef RST_BUNDLE_HPP
#define RST_BUNDLE_HPP

#include <rst/fm_index.hpp>
#include <rst/relative_fm.hpp>
#include <rst/rlcp.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace rst {

constexpr std::array<char, 4> CONTAINER_MAGIC = { 'R', 'S', 'T', '1' };
constexpr std::uint16_t CONTAINER_VERSION = 1;

struct container_section
{
  std::array<char, 4> tag = { ' ', ' ', ' ', ' ' };
  std::string payload;

  container_section() = default;
  container_section(std::string_view tag_name, std::string data);
};

// Writes/reads a whole container; read validates the magic, version, table
// bounds, and every section checksum.
void write_container(const std::string& path, const std::vector<container_section>& sections);
std::vector<container_section> read_container(const std::string& path);

// Section lookup by tag; require_section throws when the tag is absent.
const std::string* find_section(const std::vector<container_section>& sections,
                                std::string_view tag);
const std::string& require_section(const std::vector<container_section>& sections,
                                   std::string_view tag);

struct reference_bundle
{
  fm_index csa;       // index of R
  fm_index csa_rev;   // index of the reverse of R
  slarray lcp;        // LCP array of R
  std::uint64_t text_hash = 0;

  reference_bundle() = default;

  // Builds all components from an endmarker-terminated text.
  explicit reference_bundle(const text_type& text, const fm_params& params = fm_params());

  size_type size() const { return this->csa.size(); }

  // R, endmarker included, reconstructed from the index.
  text_type extract_text() const;

  void save(const std::string& path) const;
  void load(const std::string& path);
};

struct target_bundle
{
  relative_fm rfm;
  rlcp_array rlcp;
  std::optional<rselect> rsel;
  std::uint64_t reference_hash = 0;

  target_bundle() = default;

  // Builds the relative structures of `target` against the reference bundle.
  // Rejects targets whose alphabet contains symbols absent from R.
  target_bundle(const reference_bundle& reference, const text_type& target,
                const rfm_params& index_params = rfm_params(),
                const rlz_params& parse_params = rlz_params(),
                bool with_rselect = false);

  size_type size() const { return this->rfm.size(); }

  void save(const std::string& path) const;

  // The hash stored in the target file must match the reference bundle.
  void load(const std::string& path, const reference_bundle& reference);
};

// The indexed text rebuilt by an LF walk, endmarker included; works for the
// basic variant, which has no extract.
text_type reconstruct_text(const relative_fm& rfm);

// Rebuilds the target text from the relative index by an LF walk, constructs
// plain suffix structures for it, and replays `scale` randomized queries of
// every operation against those oracles. Returns false and reports the first
// failing query on any mismatch.
bool verify_bundles(const reference_bundle& reference, const target_bundle& target,
                    size_type scale, std::ostream& report);

} // namespace rst

#endif // RST_BUNDLE_HPP
