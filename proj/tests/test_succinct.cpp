#include <doctest.h>

#include <sstream>

#include <rst/adaptive_bitvector.hpp>
#include <rst/slarray.hpp>
#include <rst/wavelet_tree.hpp>

#include "oracles.hpp"

using namespace rst;

namespace
{

template<class Structure>
std::string serialized(const Structure& s)
{
  std::ostringstream out;
  s.serialize(out);
  return out.str();
}

template<class Structure>
Structure round_trip(const Structure& s)
{
  std::stringstream buffer;
  s.serialize(buffer);
  Structure copy;
  copy.load(buffer);
  return copy;
}

} // anonymous namespace

TEST_CASE("bitvector rank and select on a fixed example")
{
  bitvector bv(std::vector<bool>{ true, false, true, true, false });
  CHECK(bv.size() == 5);
  CHECK(bv.count_ones() == 3);
  CHECK(bv.rank(3, true) == 2);
  CHECK(bv.rank(5, false) == 2);
  CHECK(bv.select(2, true) == 3);
  CHECK(bv.select(1, false) == 2);
  CHECK(bv.bit(1)); CHECK(!bv.bit(2)); CHECK(bv.bit(3)); CHECK(bv.bit(4)); CHECK(!bv.bit(5));
}

TEST_CASE("bitvector agrees with scanning on random inputs")
{
  std::mt19937_64 rng(20240901);
  for(size_type n : { size_type(1), size_type(63), size_type(64), size_type(65),
                      size_type(511), size_type(512), size_type(513), size_type(4000) })
  {
    for(double density : { 0.0, 0.02, 0.5, 0.98, 1.0 })
    {
      std::vector<bool> bits = oracle::random_bits(rng, n, density);
      bitvector bv(bits);
      size_type ones = oracle::bit_rank(bits, n, true);
      REQUIRE(bv.count_ones() == ones);
      for(size_type i = 0; i <= n; i++)
      {
        CHECK(bv.rank1(i) == oracle::bit_rank(bits, i, true));
        CHECK(bv.rank0(i) == oracle::bit_rank(bits, i, false));
      }
      for(size_type j = 1; j <= ones; j++) { CHECK(bv.select1(j) == oracle::bit_select(bits, j, true)); }
      for(size_type j = 1; j <= n - ones; j++) { CHECK(bv.select0(j) == oracle::bit_select(bits, j, false)); }
      for(size_type i = 1; i <= n; i++) { CHECK(bv.bit(i) == bool(bits[i - 1])); }
    }
  }
}

TEST_CASE("bitvector select rejects out-of-range occurrences")
{
  bitvector bv(std::vector<bool>{ true, false, true });
  CHECK_THROWS_AS(bv.select1(0), std::out_of_range);
  CHECK_THROWS_AS(bv.select1(3), std::out_of_range);
  CHECK_THROWS_AS(bv.select0(2), std::out_of_range);
  CHECK_THROWS_AS(bv.rank1(4), std::out_of_range);
}

TEST_CASE("bitvector construction from raw words matches bit construction")
{
  std::mt19937_64 rng(7);
  for(size_type n : { size_type(1), size_type(64), size_type(100), size_type(130) })
  {
    std::vector<bool> bits = oracle::random_bits(rng, n, 0.5);
    std::vector<std::uint64_t> words(words_for_bits(n), 0);
    for(size_type i = 0; i < n; i++)
    {
      if(bits[i]) { words[i / WORD_BITS] |= std::uint64_t(1) << (i % WORD_BITS); }
    }
    CHECK(bitvector(words, n) == bitvector(bits));
  }
}

TEST_CASE("sparse bitvector agrees with the plain bitvector")
{
  std::mt19937_64 rng(42);
  size_type n = 10000;
  for(double density : { 0.0, 0.0005, 0.01, 0.2 })
  {
    std::vector<bool> bits = oracle::random_bits(rng, n, density);
    std::vector<size_type> positions;
    for(size_type i = 0; i < n; i++) { if(bits[i]) { positions.push_back(i + 1); } }

    sparse_bitvector sparse(positions, n);
    bitvector plain(bits);
    REQUIRE(sparse.size() == n);
    REQUIRE(sparse.count_ones() == plain.count_ones());
    for(size_type i = 0; i <= n; i += 7)
    {
      CHECK(sparse.rank1(i) == plain.rank1(i));
      CHECK(sparse.rank0(i) == plain.rank0(i));
    }
    for(size_type j = 1; j <= sparse.count_ones(); j++) { CHECK(sparse.select1(j) == plain.select1(j)); }
    for(size_type j = 1; j <= n - sparse.count_ones(); j += 13) { CHECK(sparse.select0(j) == plain.select0(j)); }
    for(size_type i = 1; i <= n; i += 11) { CHECK(sparse.bit(i) == plain.bit(i)); }
  }
}

TEST_CASE("sparse bitvector rejects bad positions")
{
  CHECK_THROWS_AS(sparse_bitvector({ 3, 3 }, 10), std::invalid_argument);
  CHECK_THROWS_AS(sparse_bitvector({ 0 }, 10), std::invalid_argument);
  CHECK_THROWS_AS(sparse_bitvector({ 11 }, 10), std::invalid_argument);
}

TEST_CASE("adaptive bitvector keeps the full rank/select algebra")
{
  std::mt19937_64 rng(99);
  size_type n = 50000;
  for(double density : { 0.001, 0.5, 0.999 })
  {
    std::vector<bool> bits = oracle::random_bits(rng, n, density);
    adaptive_bitvector adaptive(bits);
    bitvector plain(bits);
    REQUIRE(adaptive.size() == n);
    REQUIRE(adaptive.count_ones() == plain.count_ones());
    for(size_type i = 0; i <= n; i += 97)
    {
      CHECK(adaptive.rank1(i) == plain.rank1(i));
      CHECK(adaptive.rank0(i) == plain.rank0(i));
    }
    for(size_type j = 1; j <= adaptive.count_ones(); j += 89) { CHECK(adaptive.select1(j) == plain.select1(j)); }
    for(size_type j = 1; j <= n - adaptive.count_ones(); j += 89) { CHECK(adaptive.select0(j) == plain.select0(j)); }
    for(size_type i = 1; i <= n; i += 101) { CHECK(adaptive.bit(i) == plain.bit(i)); }
  }
}

TEST_CASE("adaptive bitvector compresses skewed inputs")
{
  size_type n = 100000;
  std::vector<bool> mostly_zero(n, false), mostly_one(n, true), balanced(n, false);
  for(size_type i = 0; i < n; i += 1000) { mostly_zero[i] = true; mostly_one[i] = false; }
  for(size_type i = 0; i < n; i += 2) { balanced[i] = true; }

  size_type plain_bytes = serialized(bitvector(balanced)).size();
  CHECK(serialized(adaptive_bitvector(mostly_zero)).size() * 10 < plain_bytes);
  CHECK(serialized(adaptive_bitvector(mostly_one)).size() * 10 < plain_bytes);
  // A balanced vector stays within a small constant of plain storage.
  CHECK(serialized(adaptive_bitvector(balanced)).size() < plain_bytes + 64);
}

TEST_CASE("adaptive bitvector run encoding matches the plain oracle")
{
  std::mt19937_64 rng(181);
  size_type n = 60000;
  std::geometric_distribution<size_type> burst(0.08);   // bursts of ~12 bits
  std::uniform_int_distribution<size_type> gap(150, 450);

  for(bool majority : { true, false })
  {
    // Minority bursts at the ends and scattered through the middle.
    std::vector<bool> bits(n, majority);
    auto plant = [&](size_type start, size_type length)
    {
      for(size_type i = start; i < std::min(n, start + length); i++) { bits[i] = !majority; }
    };
    plant(0, 9);
    plant(n - 5, 5);
    for(size_type at = gap(rng); at + 40 < n; at += gap(rng)) { plant(at, burst(rng) + 1); }

    adaptive_bitvector adaptive(bits);
    bitvector plain(bits);
    REQUIRE(adaptive.encoding() >= 3);  // run mode pays off for bursty minorities
    REQUIRE(adaptive.size() == n);
    REQUIRE(adaptive.count_ones() == plain.count_ones());
    for(size_type i = 0; i <= n; i++) { CHECK(adaptive.rank1(i) == plain.rank1(i)); }
    for(size_type j = 1; j <= adaptive.count_ones(); j++) { CHECK(adaptive.select1(j) == plain.select1(j)); }
    for(size_type j = 1; j <= n - adaptive.count_ones(); j++) { CHECK(adaptive.select0(j) == plain.select0(j)); }
    for(size_type i = 1; i <= n; i++) { CHECK(adaptive.bit(i) == plain.bit(i)); }
    CHECK_THROWS_AS(adaptive.select1(adaptive.count_ones() + 1), std::out_of_range);
    CHECK_THROWS_AS(adaptive.select0(n - adaptive.count_ones() + 1), std::out_of_range);
    CHECK(serialized(round_trip(adaptive)) == serialized(adaptive));

    // The run encoding must beat per-position Elias-Fano by a wide margin here.
    size_type minority = std::min(plain.count_ones(), n - plain.count_ones());
    std::vector<size_type> positions;
    for(size_type i = 1; i <= n; i++) { if(bits[i - 1] != majority) { positions.push_back(i); } }
    REQUIRE(positions.size() == minority);
    CHECK(serialized(adaptive).size() * 3 < serialized(sparse_bitvector(positions, n)).size());
  }
}

TEST_CASE("int_vector stores values of every width")
{
  std::mt19937_64 rng(3);
  for(size_type width = 1; width <= 64; width++)
  {
    size_type n = 100;
    std::uniform_int_distribution<size_type> dist(0, width == 64 ? ~size_type(0) : (size_type(1) << width) - 1);
    std::vector<size_type> values(n);
    for(size_type i = 0; i < n; i++) { values[i] = dist(rng); }

    int_vector iv(n, width);
    for(size_type i = 0; i < n; i++) { iv.set(i, values[i]); }
    for(size_type i = 0; i < n; i++) { CHECK(iv.get(i) == values[i]); }
  }
}

TEST_CASE("int_vector from values picks a sufficient width")
{
  int_vector iv(std::vector<size_type>{ 0, 300, 7 });
  CHECK(iv.size() == 3);
  CHECK(iv.bits() == 9);
  CHECK(iv.get(0) == 0);
  CHECK(iv.get(1) == 300);
  CHECK(iv.get(2) == 7);
}

TEST_CASE("slarray escapes large values")
{
  slarray a(std::vector<size_type>{ 0, 300, 7 });
  CHECK(a.size() == 3);
  CHECK(a.get(1) == 0);
  CHECK(a.get(2) == 300);
  CHECK(a.get(3) == 7);

  // 255 and larger go through the escape path; 254 stays in the byte layer.
  slarray b(std::vector<size_type>{ 254, 255, 256 });
  CHECK(b.get(1) == 254);
  CHECK(b.get(2) == 255);
  CHECK(b.get(3) == 256);
}

TEST_CASE("slarray matches a vector under random access, extract and scans")
{
  std::mt19937_64 rng(17);
  std::vector<size_type> values;
  for(size_type i = 0; i < 5000; i++)
  {
    if(rng() % 10 == 0) { values.push_back(250 + rng() % 10000); }
    else { values.push_back(rng() % 255); }
  }
  slarray array(values);
  REQUIRE(array.size() == values.size());
  for(size_type i = 1; i <= values.size(); i++) { CHECK(array.get(i) == values[i - 1]); }

  for(size_type trial = 0; trial < 50; trial++)
  {
    size_type sp = rng() % values.size() + 1;
    size_type ep = sp + rng() % (values.size() - sp + 1);
    std::vector<size_type> expected(values.begin() + sp - 1, values.begin() + ep);
    CHECK(array.extract(sp, ep) == expected);

    slarray::cursor cursor = array.scan(sp);
    for(size_type i = sp; i <= ep; i++) { CHECK(cursor.next() == values[i - 1]); }
  }
}

TEST_CASE("wavelet tree rank, select and access on a fixed example")
{
  std::vector<symbol_type> seq{ 'A', 'C', 'T', 'G', 'A', 0, 'T', 'T' };
  wavelet_tree wt(seq);
  CHECK(wt.size() == 8);
  CHECK(wt.rank('T', 8) == 3);
  CHECK(wt.access(6) == 0);
  CHECK(wt.select('A', 2) == 5);
  CHECK(wt.count('T') == 3);
  CHECK(wt.count('X') == 0);
  CHECK(wt.rank('X', 8) == 0);
  CHECK(wt.alphabet() == std::vector<symbol_type>{ 0, 'A', 'C', 'G', 'T' });
  CHECK_THROWS_AS(wt.select('X', 1), std::out_of_range);
  CHECK_THROWS_AS(wt.select('A', 3), std::out_of_range);
}

TEST_CASE("wavelet tree agrees with scanning on random sequences")
{
  std::mt19937_64 rng(12345);
  struct config { size_type n, sigma; };
  for(config c : { config{ 0, 1 }, config{ 200, 1 }, config{ 500, 2 },
                   config{ 500, 6 }, config{ 1000, 250 }, config{ 300, 100000 } })
  {
    std::vector<symbol_type> seq = oracle::random_values<symbol_type>(rng, c.n, 0, symbol_type(c.sigma - 1));
    // Skew the distribution so Huffman shapes are non-trivial.
    for(size_type i = 0; i + 1 < seq.size(); i += 3) { seq[i] = seq[0]; }
    wavelet_tree wt(seq);
    REQUIRE(wt.size() == c.n);

    std::vector<symbol_type> probes(seq.begin(), seq.begin() + std::min<size_type>(seq.size(), 10));
    probes.push_back(symbol_type(c.sigma));  // absent symbol
    for(symbol_type c2 : probes)
    {
      for(size_type i = 0; i <= c.n; i += (c.n / 50 + 1)) { CHECK(wt.rank(c2, i) == oracle::seq_rank(seq, c2, i)); }
      size_type total = oracle::seq_rank(seq, c2, c.n);
      CHECK(wt.count(c2) == total);
      for(size_type j = 1; j <= total; j += (total / 20 + 1)) { CHECK(wt.select(c2, j) == oracle::seq_select(seq, c2, j)); }
    }
    for(size_type i = 1; i <= c.n; i += (c.n / 100 + 1)) { CHECK(wt.access(i) == seq[i - 1]); }
  }
}

TEST_CASE("serialization round trips are byte identical")
{
  std::mt19937_64 rng(555);
  std::vector<bool> bits = oracle::random_bits(rng, 3000, 0.3);

  bitvector bv(bits);
  CHECK(round_trip(bv) == bv);
  CHECK(serialized(round_trip(bv)) == serialized(bv));

  std::vector<size_type> positions;
  for(size_type i = 0; i < bits.size(); i += 50) { positions.push_back(i + 1); }
  sparse_bitvector sparse(positions, bits.size());
  CHECK(serialized(round_trip(sparse)) == serialized(sparse));

  adaptive_bitvector adaptive(bits);
  CHECK(serialized(round_trip(adaptive)) == serialized(adaptive));

  int_vector iv(std::vector<size_type>{ 1, 99, 3, 1234567, 0 });
  CHECK(round_trip(iv) == iv);
  CHECK(serialized(round_trip(iv)) == serialized(iv));

  slarray sl(std::vector<size_type>{ 3, 555, 0, 254, 255, 100000 });
  CHECK(serialized(round_trip(sl)) == serialized(sl));

  std::vector<symbol_type> seq = oracle::random_values<symbol_type>(rng, 2000, 0, 20);
  wavelet_tree wt(seq);
  wavelet_tree wt2 = round_trip(wt);
  CHECK(serialized(wt2) == serialized(wt));
  for(size_type i = 1; i <= wt.size(); i += 37) { CHECK(wt2.access(i) == wt.access(i)); }

  // Loading under a wrong tag fails instead of misreading.
  std::stringstream buffer;
  bv.serialize(buffer);
  int_vector wrong;
  CHECK_THROWS_AS(wrong.load(buffer), std::runtime_error);
}
