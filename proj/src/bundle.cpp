#include <rst/bundle.hpp>
#include <rst/io.hpp>
#include <rst/text.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

namespace rst {

//------------------------------------------------------------------------------
// Container
//------------------------------------------------------------------------------

namespace {

std::uint32_t
payload_crc(const std::string& payload)
{
  uLong crc = crc32_z(0L, Z_NULL, 0);
  crc = crc32_z(crc, reinterpret_cast<const Bytef*>(payload.data()), payload.size());
  return std::uint32_t(crc);
}

void
write_u16(std::ostream& out, std::uint16_t v)
{
  out.put(char(v & 0xFF));
  out.put(char(v >> 8));
}

void
write_u32(std::ostream& out, std::uint32_t v)
{
  for(int shift = 0; shift < 32; shift += 8) { out.put(char((v >> shift) & 0xFF)); }
}

std::uint64_t
buffer_u64(const std::string& data, size_type offset)
{
  std::uint64_t v = 0;
  for(int shift = 0; shift < 64; shift += 8)
  {
    v |= std::uint64_t(byte_type(data[offset])) << shift;
    offset++;
  }
  return v;
}

std::uint32_t
buffer_u32(const std::string& data, size_type offset)
{
  std::uint32_t v = 0;
  for(int shift = 0; shift < 32; shift += 8)
  {
    v |= std::uint32_t(byte_type(data[offset])) << shift;
    offset++;
  }
  return v;
}

template<class Structure>
std::string
serialized(const Structure& x)
{
  std::ostringstream out(std::ios::binary);
  x.serialize(out);
  return std::move(out).str();
}

std::string
hash_payload(std::uint64_t hash)
{
  std::ostringstream out(std::ios::binary);
  io::write_u64(out, hash);
  return std::move(out).str();
}

std::uint64_t
hash_of(const std::string& payload)
{
  if(payload.size() != 8) { throw std::runtime_error("container: malformed hash section"); }
  return buffer_u64(payload, 0);
}

text_type
reverse_text(const text_type& text)
{
  text_type rev(text.rbegin() + 1, text.rend());
  rev.push_back(ENDMARKER);
  return rev;
}

} // anonymous namespace

container_section::container_section(std::string_view tag_name, std::string data) :
  payload(std::move(data))
{
  if(tag_name.size() != 4) { throw std::invalid_argument("container: section tags are 4 bytes"); }
  std::copy(tag_name.begin(), tag_name.end(), this->tag.begin());
}

void
write_container(const std::string& path, const std::vector<container_section>& sections)
{
  std::ofstream out(path, std::ios::binary);
  if(!out) { throw std::runtime_error("container: cannot open " + path + " for writing"); }

  out.write(CONTAINER_MAGIC.data(), 4);
  write_u16(out, CONTAINER_VERSION);
  write_u16(out, std::uint16_t(sections.size()));

  size_type offset = 8 + 20 * sections.size();
  for(const container_section& section : sections)
  {
    out.write(section.tag.data(), 4);
    io::write_u64(out, offset);
    io::write_u64(out, section.payload.size());
    offset += section.payload.size() + 4;
  }
  for(const container_section& section : sections)
  {
    out.write(section.payload.data(), std::streamsize(section.payload.size()));
    write_u32(out, payload_crc(section.payload));
  }
  if(!out) { throw std::runtime_error("container: write to " + path + " failed"); }
}

std::vector<container_section>
read_container(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if(!in) { throw std::runtime_error("container: cannot open " + path); }
  std::ostringstream buffer_stream(std::ios::binary);
  buffer_stream << in.rdbuf();
  std::string data = std::move(buffer_stream).str();

  if(data.size() < 8 || !std::equal(CONTAINER_MAGIC.begin(), CONTAINER_MAGIC.end(), data.begin()))
  {
    throw std::runtime_error("container: " + path + " is not an RST1 file");
  }
  std::uint16_t version = std::uint16_t(byte_type(data[4])) | (std::uint16_t(byte_type(data[5])) << 8);
  if(version != CONTAINER_VERSION)
  {
    throw std::runtime_error("container: unsupported format version in " + path);
  }
  size_type count = std::uint16_t(byte_type(data[6])) | (std::uint16_t(byte_type(data[7])) << 8);
  if(data.size() < 8 + 20 * count)
  {
    throw std::runtime_error("container: truncated section table in " + path);
  }

  std::vector<container_section> sections(count);
  for(size_type i = 0; i < count; i++)
  {
    size_type entry = 8 + 20 * i;
    std::copy(data.begin() + entry, data.begin() + entry + 4, sections[i].tag.begin());
    std::uint64_t offset = buffer_u64(data, entry + 4);
    std::uint64_t length = buffer_u64(data, entry + 12);
    if(offset + length + 4 > data.size())
    {
      throw std::runtime_error("container: section out of bounds in " + path);
    }
    sections[i].payload = data.substr(offset, length);
    if(payload_crc(sections[i].payload) != buffer_u32(data, offset + length))
    {
      std::string tag(sections[i].tag.begin(), sections[i].tag.end());
      throw std::runtime_error("container: checksum mismatch in section " + tag + " of " + path);
    }
  }
  return sections;
}

const std::string*
find_section(const std::vector<container_section>& sections, std::string_view tag)
{
  for(const container_section& section : sections)
  {
    if(std::equal(tag.begin(), tag.end(), section.tag.begin(), section.tag.end()))
    {
      return &(section.payload);
    }
  }
  return nullptr;
}

const std::string&
require_section(const std::vector<container_section>& sections, std::string_view tag)
{
  const std::string* payload = find_section(sections, tag);
  if(payload == nullptr)
  {
    throw std::runtime_error("container: missing section " + std::string(tag));
  }
  return *payload;
}

//------------------------------------------------------------------------------
// Bundles
//------------------------------------------------------------------------------

reference_bundle::reference_bundle(const text_type& text, const fm_params& params)
{
  suffix_structures s = build_suffix_structures(text);
  this->csa = fm_index(s, params);
  this->lcp = slarray(build_lcp_array(text, s.sa, s.isa));
  this->csa_rev = fm_index(build_suffix_structures(reverse_text(text)), params);
  this->text_hash = fnv1a_hash(text.data(), text.size());
}

text_type
reference_bundle::extract_text() const
{
  return this->csa.extract(1, this->csa.size());
}

void
reference_bundle::save(const std::string& path) const
{
  std::vector<container_section> sections;
  sections.emplace_back("META", hash_payload(this->text_hash));
  sections.emplace_back("FMIR", serialized(this->csa));
  sections.emplace_back("FMRV", serialized(this->csa_rev));
  sections.emplace_back("LCPR", serialized(this->lcp));
  write_container(path, sections);
}

void
reference_bundle::load(const std::string& path)
{
  std::vector<container_section> sections = read_container(path);
  this->text_hash = hash_of(require_section(sections, "META"));
  { std::istringstream in(require_section(sections, "FMIR"), std::ios::binary); this->csa.load(in); }
  { std::istringstream in(require_section(sections, "FMRV"), std::ios::binary); this->csa_rev.load(in); }
  { std::istringstream in(require_section(sections, "LCPR"), std::ios::binary); this->lcp.load(in); }
  if(this->csa.size() != this->csa_rev.size() || this->csa.size() != this->lcp.size())
  {
    throw std::runtime_error("reference bundle: component sizes disagree in " + path);
  }
}

target_bundle::target_bundle(const reference_bundle& reference, const text_type& target,
                             const rfm_params& index_params, const rlz_params& parse_params,
                             bool with_rselect)
{
  text_type ref_text = reference.extract_text();

  std::array<bool, SIGMA> in_ref = {};
  for(byte_type c : ref_text) { in_ref[c] = true; }
  for(byte_type c : target)
  {
    if(!in_ref[c])
    {
      throw std::invalid_argument("target bundle: target alphabet contains symbols absent from the reference");
    }
  }

  this->rfm = relative_fm(reference.csa, ref_text, target, index_params);
  suffix_structures s = build_suffix_structures(target);
  this->rlcp = rlcp_array(reference.lcp, slarray(build_lcp_array(target, s.sa, s.isa)), parse_params);
  if(with_rselect) { this->rsel.emplace(this->rfm); }
  this->reference_hash = reference.text_hash;
}

void
target_bundle::save(const std::string& path) const
{
  std::vector<container_section> sections;
  sections.emplace_back("META", hash_payload(this->reference_hash));
  sections.emplace_back("RFMX", serialized(this->rfm));
  sections.emplace_back("RLCP", serialized(this->rlcp));
  if(this->rsel) { sections.emplace_back("RSEL", serialized(*(this->rsel))); }
  write_container(path, sections);
}

void
target_bundle::load(const std::string& path, const reference_bundle& reference)
{
  std::vector<container_section> sections = read_container(path);
  this->reference_hash = hash_of(require_section(sections, "META"));
  if(this->reference_hash != reference.text_hash)
  {
    throw std::runtime_error("target bundle: " + path + " was built against a different reference");
  }
  {
    std::istringstream in(require_section(sections, "RFMX"), std::ios::binary);
    this->rfm.load(in, reference.csa);
  }
  {
    std::istringstream in(require_section(sections, "RLCP"), std::ios::binary);
    this->rlcp.load(in, reference.lcp);
  }
  this->rsel.reset();
  if(const std::string* payload = find_section(sections, "RSEL"); payload != nullptr)
  {
    std::istringstream in(*payload, std::ios::binary);
    this->rsel.emplace();
    this->rsel->load(in);
  }
}

//------------------------------------------------------------------------------
// Verification
//------------------------------------------------------------------------------

text_type
reconstruct_text(const relative_fm& rfm)
{
  size_type n = rfm.size();
  text_type text(n, ENDMARKER);
  size_type row = 1;  // the row of the endmarker suffix
  for(size_type p = n - 1; p >= 1; p--)
  {
    text[p - 1] = rfm.bwt_at(row);
    row = rfm.lf(row);
  }
  // The walk now stands at the row of suffix 1; its BWT entry wraps to the
  // endmarker, whose LF closes the cycle.
  if(rfm.bwt_at(row) != ENDMARKER || rfm.lf(row) != 1)
  {
    throw std::runtime_error("reconstruct_text: LF walk did not close the text cycle");
  }
  return text;
}

namespace {

// Range length distributed as 16^k with probability 0.5^k, capped at n.
size_type
random_range_length(std::mt19937_64& rng, size_type n)
{
  size_type len = 16;
  while(len < n && (rng() & 1)) { len *= 16; }
  return std::min(len, n);
}

position_value
scan_rmq(const std::vector<size_type>& lcp, size_type sp, size_type ep)
{
  position_value best{ sp, lcp[sp - 1] };
  for(size_type j = sp + 1; j <= ep; j++)
  {
    if(lcp[j - 1] < best.value) { best = { j, lcp[j - 1] }; }
  }
  return best;
}

position_value
scan_nsv(const std::vector<size_type>& lcp, size_type i)
{
  for(size_type j = i + 1; j <= lcp.size(); j++)
  {
    if(lcp[j - 1] < lcp[i - 1]) { return { j, lcp[j - 1] }; }
  }
  return { lcp.size() + 1, 0 };
}

position_value
scan_psv(const std::vector<size_type>& lcp, size_type i)
{
  for(size_type j = i; j > 1; j--)
  {
    if(lcp[j - 2] < lcp[i - 1]) { return { j - 1, lcp[j - 2] }; }
  }
  return { 0, 0 };
}

} // anonymous namespace

bool
verify_bundles(const reference_bundle& reference, const target_bundle& target,
               size_type scale, std::ostream& report)
{
  auto fail = [&](const std::string& message) -> bool
  {
    report << "verify: FAIL: " << message << std::endl;
    return false;
  };
  auto mismatch = [&](const char* op, size_type arg, std::uint64_t expected, std::uint64_t got) -> bool
  {
    report << "verify: FAIL: " << op << "(" << arg << "): expected " << expected
           << ", got " << got << std::endl;
    return false;
  };

  // Content hashes bind the pair together and to the stored reference text.
  text_type r = reference.extract_text();
  if(fnv1a_hash(r.data(), r.size()) != reference.text_hash)
  {
    return fail("reference text does not match its stored hash");
  }
  if(target.reference_hash != reference.text_hash)
  {
    return fail("target was built against a different reference");
  }

  // The reversed index must reproduce the reversed reference.
  {
    text_type rev(r.rbegin() + 1, r.rend());
    rev.push_back(ENDMARKER);
    if(reference.csa_rev.size() != rev.size() || reference.csa_rev.extract(1, rev.size()) != rev)
    {
      return fail("reverse-reference index does not reproduce the reversed text");
    }
  }

  // Rebuild the target text by an LF walk; works for the basic variant too.
  size_type n = target.rfm.size();
  if(n != target.rlcp.size()) { return fail("relative index and relative LCP sizes disagree"); }
  text_type s;
  try { s = reconstruct_text(target.rfm); }
  catch(const std::runtime_error& e) { return fail(e.what()); }
  for(size_type p = 1; p < n; p++)
  {
    if(s[p - 1] == ENDMARKER) { return fail("reconstructed text has an interior endmarker"); }
  }

  // Direct oracles over the reconstructed texts.
  suffix_structures ss = build_suffix_structures(s);
  fm_index direct(ss);
  std::vector<size_type> lcp_s = build_lcp_array(s, ss.sa, ss.isa);
  {
    suffix_structures rr = build_suffix_structures(r);
    std::vector<size_type> lcp_r = build_lcp_array(r, rr.sa, rr.isa);
    if(reference.lcp.size() != lcp_r.size())
    {
      return fail("stored reference LCP has the wrong length");
    }
    for(size_type i = 1; i <= lcp_r.size(); i++)
    {
      if(reference.lcp.get(i) != lcp_r[i - 1])
      {
        return mismatch("reference lcp", i, lcp_r[i - 1], reference.lcp.get(i));
      }
    }
  }

  std::vector<byte_type> alphabet;
  {
    std::array<bool, SIGMA> present = {};
    for(byte_type c : s) { present[c] = true; }
    for(size_type c = 0; c < SIGMA; c++) { if(present[c]) { alphabet.push_back(byte_type(c)); } }
  }

  std::mt19937_64 rng(0x52535456);  // fixed seed: verification replays identically
  std::uniform_int_distribution<size_type> pos(1, n);
  const rselect* rs = (target.rsel ? &*(target.rsel) : nullptr);

  for(size_type q = 0; q < scale; q++)
  {
    size_type i = pos(rng);
    byte_type c = alphabet[rng() % alphabet.size()];

    if(target.rfm.bwt_at(i) != direct.bwt_at(i))
    {
      return mismatch("bwt", i, direct.bwt_at(i), target.rfm.bwt_at(i));
    }
    if(target.rfm.lf(i) != direct.lf(i))
    {
      return mismatch("lf", i, direct.lf(i), target.rfm.lf(i));
    }
    if(target.rfm.psi(i, rs) != direct.psi(i))
    {
      return mismatch("psi", i, direct.psi(i), target.rfm.psi(i, rs));
    }
    if(target.rfm.rank(c, i) != direct.bwt_rank(c, i))
    {
      return mismatch("rank", i, direct.bwt_rank(c, i), target.rfm.rank(c, i));
    }
    size_type occurrences = direct.bwt_rank(c, n);
    if(occurrences > 0)
    {
      size_type j = 1 + rng() % occurrences;
      if(target.rfm.select(c, j, rs) != direct.bwt_select(c, j))
      {
        return mismatch("select", j, direct.bwt_select(c, j), target.rfm.select(c, j, rs));
      }
    }

    // Patterns drawn from the text always hit; shuffled ones may miss.
    {
      size_type length = 1 + rng() % 16;
      size_type start = 1 + rng() % (n > length ? n - length : 1);
      text_type pattern(s.begin() + start - 1, s.begin() + start - 1 + length);
      if(q % 2 == 1) { std::shuffle(pattern.begin(), pattern.end(), rng); }
      if(std::find(pattern.begin(), pattern.end(), ENDMARKER) == pattern.end())
      {
        range_type relative = target.rfm.find(pattern);
        range_type expected = direct.find(pattern);
        bool same = (empty_range(relative) && empty_range(expected)) || relative == expected;
        if(!same)
        {
          return mismatch("find", start, expected.first, relative.first);
        }
      }
    }

    if(target.rfm.full())
    {
      if(target.rfm.locate(i) != ss.sa[i - 1])
      {
        return mismatch("locate", i, ss.sa[i - 1], target.rfm.locate(i));
      }
      if(target.rfm.isa(i) != ss.isa[i - 1])
      {
        return mismatch("isa", i, ss.isa[i - 1], target.rfm.isa(i));
      }
      size_type to = std::min(n, i + rng() % 64);
      text_type window = target.rfm.extract(i, to);
      if(!std::equal(window.begin(), window.end(), s.begin() + i - 1))
      {
        return mismatch("extract", i, to, window.size());
      }
    }

    access_result lcp_value = target.rlcp.access(i);
    if(lcp_value.value != lcp_s[i - 1])
    {
      return mismatch("lcp access", i, lcp_s[i - 1], lcp_value.value);
    }
    {
      size_type length = random_range_length(rng, n);
      size_type sp = 1 + rng() % (n - length + 1);
      size_type ep = sp + length - 1;
      position_value got = target.rlcp.rmq(sp, ep);
      position_value expected = scan_rmq(lcp_s, sp, ep);
      if(got != expected)
      {
        return mismatch("lcp rmq", sp, expected.position, got.position);
      }
    }
    if(target.rlcp.nsv(i) != scan_nsv(lcp_s, i))
    {
      return mismatch("lcp nsv", i, scan_nsv(lcp_s, i).position, target.rlcp.nsv(i).position);
    }
    if(target.rlcp.psv(i) != scan_psv(lcp_s, i))
    {
      return mismatch("lcp psv", i, scan_psv(lcp_s, i).position, target.rlcp.psv(i).position);
    }
  }

  report << "verify: PASS: " << scale << " query rounds, all operations agree with direct oracles"
         << std::endl;
  return true;
}

} // namespace rst
