/*
 * fasta.hpp: FASTA ingestion for DNA texts.
 *
 * Records are uppercased and concatenated in file order, optionally separated
 * by a single N; symbols outside {A,C,G,T,N} map to N; the endmarker is
 * appended. The mapped-symbol count is reported so callers can surface how
 * much of the input was coerced.
 */

#ifndef RST_FASTA_HPP
#define RST_FASTA_HPP

#include <istream>

#include <rst/text.hpp>

namespace rst {

struct fasta_report
{
  size_type records = 0;
  size_type length = 0;          // sequence symbols, excluding the endmarker
  size_type mapped = 0;          // symbols coerced to N
};

// Reads every record of a FASTA stream into one endmarker-terminated text.
// Throws std::runtime_error on an empty file, on sequence data before the
// first header, or on a header without sequence.
text_type ingest_fasta(std::istream& in, fasta_report* report = nullptr,
                       bool separate_records = false);

text_type ingest_fasta_file(const std::string& path, fasta_report* report = nullptr,
                            bool separate_records = false);

// Writes one record; line-wrapped at 80 symbols. The endmarker, if present,
// is dropped.
void write_fasta(std::ostream& out, const std::string& name, const text_type& text);

void write_fasta_file(const std::string& path, const std::string& name,
                      const text_type& text);

} // namespace rst

#endif // RST_FASTA_HPP
