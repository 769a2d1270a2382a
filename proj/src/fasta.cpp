/*
 * fasta.cpp: FASTA reading and writing.
 */

#include <rst/fasta.hpp>

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace rst {

text_type ingest_fasta(std::istream& in, fasta_report* report, bool separate_records)
{
  text_type text;
  fasta_report stats;
  bool in_record = false, record_has_data = false;
  std::string line;
  while(std::getline(in, line))
  {
    while(!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) { line.pop_back(); }
    if(line.empty()) { continue; }
    if(line[0] == '>')
    {
      if(in_record && !record_has_data)
      {
        throw std::runtime_error("fasta: record without sequence data");
      }
      if(in_record && separate_records) { text.push_back(byte_type('N')); }
      in_record = true; record_has_data = false;
      stats.records++;
      continue;
    }
    if(!in_record)
    {
      throw std::runtime_error("fasta: sequence data before the first header");
    }
    for(char raw : line)
    {
      if(std::isspace(static_cast<unsigned char>(raw))) { continue; }
      byte_type c = byte_type(std::toupper(static_cast<unsigned char>(raw)));
      if(c != 'A' && c != 'C' && c != 'G' && c != 'T' && c != 'N')
      {
        c = byte_type('N');
        stats.mapped++;
      }
      text.push_back(c);
      record_has_data = true;
    }
  }
  if(text.empty()) { throw std::runtime_error("fasta: no sequence data"); }
  if(in_record && !record_has_data)
  {
    throw std::runtime_error("fasta: record without sequence data");
  }
  stats.length = text.size();
  text.push_back(ENDMARKER);
  if(report != nullptr) { *report = stats; }
  return text;
}

text_type ingest_fasta_file(const std::string& path, fasta_report* report, bool separate_records)
{
  std::ifstream in(path, std::ios_base::binary);
  if(!in) { throw std::runtime_error("fasta: cannot open " + path); }
  return ingest_fasta(in, report, separate_records);
}

void write_fasta(std::ostream& out, const std::string& name, const text_type& text)
{
  out << '>' << name << '\n';
  size_type n = text.size();
  while(n > 0 && text[n - 1] == ENDMARKER) { n--; }
  for(size_type i = 0; i < n; i += 80)
  {
    size_type len = std::min<size_type>(80, n - i);
    out.write(reinterpret_cast<const char*>(text.data() + i), len);
    out << '\n';
  }
}

void write_fasta_file(const std::string& path, const std::string& name, const text_type& text)
{
  std::ofstream out(path, std::ios_base::binary);
  if(!out) { throw std::runtime_error("fasta: cannot open " + path); }
  write_fasta(out, name, text);
}

} // namespace rst
