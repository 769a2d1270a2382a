#include <doctest.h>

#include <sstream>

#include <rst/fm_index.hpp>

#include "oracles.hpp"

using namespace rst;

namespace
{

text_type from_string(const char* s)
{
  text_type res;
  for(const char* p = s; *p != '\0'; p++) { res.push_back(byte_type(*p)); }
  return res;
}

// The worked example used throughout: GATTACA plus the endmarker.
text_type example_text() { return with_endmarker(from_string("GATTACA")); }

template<class Structure>
std::string serialized(const Structure& s)
{
  std::ostringstream out;
  s.serialize(out);
  return out.str();
}

} // anonymous namespace

TEST_CASE("text validation enforces the endmarker invariant")
{
  CHECK_THROWS_AS(validate_text(text_type{}), std::invalid_argument);
  CHECK_THROWS_AS(validate_text(from_string("AB")), std::invalid_argument);
  CHECK_THROWS_AS(validate_text(text_type{ 'A', 0, 'B', 0 }), std::invalid_argument);
  CHECK_NOTHROW(validate_text(text_type{ 0 }));
  CHECK_NOTHROW(validate_text(example_text()));
}

TEST_CASE("suffix structures of the worked example")
{
  suffix_structures s = build_suffix_structures(example_text());
  CHECK(s.sa == std::vector<size_type>{ 8, 7, 5, 2, 6, 1, 4, 3 });
  CHECK(s.lcp == std::vector<size_type>{ 0, 0, 1, 1, 0, 0, 0, 1 });
  // BWT[8] = T[SA[8] - 1] = T[2] = A.
  CHECK(s.bwt == text_type{ 'A', 'C', 'T', 'G', 'A', 0, 'T', 'A' });
  CHECK(s.isa == std::vector<size_type>{ 6, 4, 8, 7, 3, 5, 2, 1 });
}

TEST_CASE("suffix structures match the sorting oracle on random texts")
{
  std::mt19937_64 rng(808);
  for(size_type trial = 0; trial < 60; trial++)
  {
    size_type n = rng() % 300;
    size_type sigma = 1 + rng() % 5;
    if(trial % 4 == 0) { sigma = 1 + rng() % 200; }
    text_type text = oracle::random_text(rng, n, sigma);

    suffix_structures s = build_suffix_structures(text);
    std::vector<size_type> sa = oracle::suffix_array(text);
    REQUIRE(s.sa == sa);
    CHECK(s.lcp == oracle::lcp_array(text, sa));
    CHECK(s.bwt == oracle::bwt(text, sa));
    for(size_type i = 1; i <= text.size(); i++) { CHECK(s.isa[s.sa[i - 1] - 1] == i); }
  }
}

TEST_CASE("C array construction and inversion")
{
  suffix_structures s = build_suffix_structures(example_text());
  fm_index fmi(s);
  const c_array_type& C = fmi.c_values();
  CHECK(C[0] == 0);
  CHECK(C['A'] == 1);
  CHECK(C['C'] == 4);
  CHECK(C['G'] == 5);
  CHECK(C['T'] == 6);
  CHECK(C[SIGMA] == 8);
  for(size_type i = 1; i <= 8; i++)
  {
    byte_type c = c_array_inverse(C, i);
    CHECK(C[c] < i);
    CHECK(i <= C[c + 1]);
  }
}

TEST_CASE("FM-index navigation on the worked example")
{
  fm_index fmi(build_suffix_structures(example_text()));
  CHECK(fmi.size() == 8);

  CHECK(fmi.lf(6) == 1);
  CHECK(fmi.lf(2) == 5);
  CHECK(fmi.lf(1) == 2);
  CHECK(fmi.psi(1) == 6);
  CHECK(fmi.psi(5) == 2);
  for(size_type i = 1; i <= 8; i++) { CHECK(fmi.psi(fmi.lf(i)) == i); }

  CHECK(fmi.backward_step({ 1, 8 }, 'A') == range_type{ 2, 4 });
  CHECK(fmi.backward_step({ 2, 4 }, 'T') == range_type{ 7, 7 });

  CHECK(fmi.find(from_string("A")) == range_type{ 2, 4 });
  CHECK(fmi.find(from_string("TA")) == range_type{ 7, 7 });
  CHECK(fmi.find(from_string("AC")) == range_type{ 3, 3 });
  CHECK(fmi.find(text_type{}) == range_type{ 1, 8 });
  CHECK(empty_range(fmi.find(from_string("AX"))));
  CHECK(empty_range(fmi.find(from_string("CC"))));

  CHECK(fmi.locate({ 2, 4 }) == std::vector<size_type>{ 7, 5, 2 });
  CHECK(fmi.extract(1, 8) == example_text());
  CHECK(fmi.extract(2, 4) == from_string("ATT"));
  CHECK(fmi.extract(8, 8) == text_type{ 0 });
}

TEST_CASE("locate, isa and extract under both sampling schemes")
{
  std::mt19937_64 rng(909);
  for(size_type trial = 0; trial < 25; trial++)
  {
    size_type n = 1 + rng() % 400;
    text_type text = oracle::random_text(rng, n, 1 + rng() % 4);
    suffix_structures s = build_suffix_structures(text);

    for(sa_sample_mode mode : { SAMPLE_SUFFIX_ORDER, SAMPLE_TEXT_ORDER })
    {
      for(size_type d : { size_type(3), size_type(17), size_type(64) })
      {
        fm_params params;
        params.sa_interval = d;
        params.isa_interval = (d % 2 == 0 ? d : 2 * d);
        params.mode = mode;
        fm_index fmi(s, params);

        for(size_type i = 1; i <= s.size(); i++) { CHECK(fmi.locate(i) == s.sa[i - 1]); }
        for(size_type p = 1; p <= s.size(); p++) { CHECK(fmi.isa(p) == s.isa[p - 1]); }
        CHECK(fmi.extract(1, s.size()) == s.text);
        size_type i = rng() % s.size() + 1;
        size_type j = i + rng() % (s.size() - i + 1);
        CHECK(fmi.extract(i, j) == text_type(s.text.begin() + i - 1, s.text.begin() + j));
      }
    }
  }
}

TEST_CASE("find agrees with brute-force pattern matching")
{
  std::mt19937_64 rng(1010);
  for(size_type trial = 0; trial < 30; trial++)
  {
    text_type text = oracle::random_text(rng, 200 + rng() % 200, 1 + rng() % 3);
    fm_index fmi(build_suffix_structures(text));

    for(size_type t2 = 0; t2 < 20; t2++)
    {
      size_type len = 1 + rng() % 8;
      text_type pattern;
      if(t2 % 3 == 0)
      {
        for(size_type k = 0; k < len; k++) { pattern.push_back(byte_type(1 + rng() % 3)); }
      }
      else
      {
        // Sample a real substring so that matches are common.
        size_type p = rng() % (text.size() - len) + 1;
        pattern.assign(text.begin() + p - 1, text.begin() + p - 1 + len);
      }
      std::vector<size_type> expected = oracle::occurrences(text, pattern);
      std::vector<size_type> found = fmi.locate(fmi.find(pattern));
      std::sort(found.begin(), found.end());
      CHECK(found == expected);
    }
  }
}

TEST_CASE("single-symbol text behaves")
{
  text_type text{ 0 };
  fm_index fmi(build_suffix_structures(text));
  CHECK(fmi.size() == 1);
  CHECK(fmi.locate(1) == 1);
  CHECK(fmi.isa(1) == 1);
  CHECK(fmi.extract(1, 1) == text);
  CHECK(empty_range(fmi.find(from_string("A"))));
}

TEST_CASE("FM-index serialization round trips byte identically")
{
  std::mt19937_64 rng(111);
  text_type text = oracle::random_text(rng, 500, 4);
  suffix_structures s = build_suffix_structures(text);

  for(sa_sample_mode mode : { SAMPLE_SUFFIX_ORDER, SAMPLE_TEXT_ORDER })
  {
    fm_params params;
    params.mode = mode;
    fm_index fmi(s, params);
    std::stringstream buffer;
    fmi.serialize(buffer);
    fm_index copy;
    copy.load(buffer);
    CHECK(serialized(copy) == serialized(fmi));
    for(size_type i = 1; i <= s.size(); i += 13) { CHECK(copy.locate(i) == fmi.locate(i)); }
    CHECK(copy.extract(1, s.size()) == text);
  }
}
