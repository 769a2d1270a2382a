#include <doctest.h>

#include <sstream>

#include <rst/rlz.hpp>

#include "oracles.hpp"

using namespace rst;

namespace
{

std::vector<value_type> tokens_of(const char* s)
{
  std::vector<value_type> res;
  for(const char* p = s; *p != '\0'; p++) { res.push_back(value_type(*p)); }
  return res;
}

// Brute-force longest prefix of target[from..] occurring in the reference,
// with the smallest source among the longest matches.
std::pair<size_type, size_type> naive_longest(const std::vector<value_type>& ref,
                                              const std::vector<value_type>& target,
                                              size_type from, size_type max_len)
{
  size_type best_len = 0, best_src = 0;
  for(size_type p = 1; p <= ref.size(); p++)
  {
    size_type len = 0;
    while(len < max_len && from + len <= target.size() && p + len <= ref.size()
          && ref[p + len - 1] == target[from + len - 1]) { len++; }
    if(len > best_len) { best_len = len; best_src = p; }
  }
  return { best_len, best_src };
}

// Rebuilds the target from the phrases and checks structural invariants.
void check_parse(const rlz_parse& parse, const std::vector<value_type>& ref,
                 const std::vector<value_type>& target, const rlz_params& params)
{
  REQUIRE(parse.size() == target.size());
  std::vector<value_type> rebuilt;
  value_type last_explicit = 0;
  for(size_type i = 1; i <= parse.phrases(); i++)
  {
    std::vector<value_type> piece = parse.decompress_phrase(i, ref);
    REQUIRE(parse.literal_count(i) >= 1);
    REQUIRE(parse.copy_length(i) <= params.max_phrase_length);
    if(parse.copy_length(i) > 0)
    {
      REQUIRE(parse.source(i) >= 1);
      REQUIRE(parse.source(i) + parse.copy_length(i) - 1 <= ref.size());
    }
    else
    {
      CHECK(parse.offset(i) == 0);
    }
    if(parse.is_differential(i))
    {
      CHECK(i > 1);
      value_type delta = parse.offset(i) - last_explicit;
      CHECK(delta >= -value_type(params.probe_shift));
      CHECK(delta <= value_type(params.probe_shift));
      CHECK(parse.copy_length(i) >= params.min_probe_length);
    }
    else { last_explicit = parse.offset(i); }
    rebuilt.insert(rebuilt.end(), piece.begin(), piece.end());
  }
  if(parse.has_terminator())
  {
    REQUIRE(!rebuilt.empty());
    REQUIRE(rebuilt.back() == RLZ_TERMINATOR);
    rebuilt.pop_back();
  }
  REQUIRE(rebuilt == target);
  for(size_type j = 1; j <= target.size(); j += (target.size() / 200 + 1))
  {
    CHECK(parse.access(j, ref) == target[j - 1]);
  }
}

std::vector<value_type> substitute(std::mt19937_64& rng, const std::vector<value_type>& ref,
                                   double rate, value_type sigma, size_type* count = nullptr)
{
  std::bernoulli_distribution coin(rate);
  std::vector<value_type> res(ref);
  size_type subs = 0;
  for(value_type& v : res)
  {
    if(coin(rng))
    {
      value_type replacement = value_type(rng() % size_type(sigma)) + 1;
      if(replacement == v) { replacement = (replacement % sigma) + 1; }
      v = replacement; subs++;
    }
  }
  if(count != nullptr) { *count = subs; }
  return res;
}

} // anonymous namespace

TEST_CASE("single substitution produces a copy, a literal and a tail copy")
{
  std::vector<value_type> ref = tokens_of("ACGTACGT");
  std::vector<value_type> target = tokens_of("ACGTTCGT");
  rlz_parse parse = rlz_parse::parse(ref, target);

  REQUIRE(parse.phrases() == 2);
  CHECK(parse.copy_length(1) == 4);
  CHECK(parse.source(1) == 1);  // smallest source among {1, 5}
  CHECK(parse.literal_count(1) == 1);
  CHECK(parse.literal(1) == 'T');
  CHECK(!parse.is_differential(1));

  CHECK(parse.copy_length(2) == 3);
  CHECK(parse.source(2) == 2);  // smallest source of CGT among {2, 6}
  CHECK(parse.has_terminator());
  CHECK(parse.literal_count(2) == 1);
  CHECK(parse.decompress_phrase(2, ref) ==
        std::vector<value_type>{ 'C', 'G', 'T', RLZ_TERMINATOR });

  check_parse(parse, ref, target, rlz_params());
}

TEST_CASE("target sharing nothing with the reference becomes literal-only phrases")
{
  std::vector<value_type> ref = tokens_of("CCCC");
  std::vector<value_type> target = tokens_of("AAAA");
  rlz_parse parse = rlz_parse::parse(ref, target);

  REQUIRE(parse.phrases() == 4);
  for(size_type i = 1; i <= 4; i++)
  {
    CHECK(parse.copy_length(i) == 0);
    CHECK(parse.offset(i) == 0);
    CHECK(parse.literal_count(i) == 1);
    CHECK(parse.literal(i) == 'A');
  }
  CHECK(!parse.has_terminator());
  check_parse(parse, ref, target, rlz_params());
}

TEST_CASE("identical sequences need one phrase per length cap")
{
  std::vector<value_type> ref = tokens_of("ACGTACGTACGTACGT");
  rlz_params params;
  params.max_phrase_length = 4;
  rlz_parse parse = rlz_parse::parse(ref, ref, params);

  // Each phrase consumes cap + 1 positions except the last.
  CHECK(parse.phrases() == 4);
  CHECK(parse.has_terminator());
  check_parse(parse, ref, ref, params);
}

TEST_CASE("empty target parses to zero phrases")
{
  rlz_parse parse = rlz_parse::parse(tokens_of("ACGT"), std::vector<value_type>{});
  CHECK(parse.size() == 0);
  CHECK(parse.phrases() == 0);
  CHECK(!parse.has_terminator());
}

TEST_CASE("matcher finds the longest earliest match")
{
  std::mt19937_64 rng(2024);
  for(size_type trial = 0; trial < 20; trial++)
  {
    std::vector<value_type> ref = oracle::random_values<value_type>(rng, 200 + rng() % 200, 1, 4);
    std::vector<value_type> target = oracle::random_values<value_type>(rng, 200, 1, 4);
    rlz_matcher matcher(ref);
    std::vector<symbol_type> tids = matcher.map_target(target);

    for(size_type from = 1; from <= target.size(); from += 7)
    {
      auto got = matcher.longest_match(tids, from, 50);
      auto expected = naive_longest(ref, target, from, 50);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("matcher extension compares raw tokens")
{
  std::vector<value_type> ref = tokens_of("ACGTACGA");
  rlz_matcher matcher(ref);
  std::vector<value_type> target = tokens_of("GTACGAAC");
  std::vector<symbol_type> tids = matcher.map_target(target);
  CHECK(matcher.extension(tids, 1, 3, 100) == 6);  // GTACGA
  CHECK(matcher.extension(tids, 1, 1, 100) == 0);
  CHECK(matcher.extension(tids, 7, 1, 100) == 2);  // AC
  CHECK(matcher.extension(tids, 7, 1, 1) == 1);    // capped
}

TEST_CASE("parses of mutated copies rebuild the target")
{
  std::mt19937_64 rng(31337);
  rlz_params params;
  for(double rate : { 0.001, 0.01, 0.05, 0.3 })
  {
    std::vector<value_type> ref = oracle::random_values<value_type>(rng, 5000, 1, 4);
    std::vector<value_type> target = substitute(rng, ref, rate, 4);
    rlz_matcher matcher(ref);
    rlz_parse parse = rlz_parse::parse(matcher, target, params);
    check_parse(parse, ref, target, params);
  }
}

TEST_CASE("substitution-only targets respect the phrase bound")
{
  std::mt19937_64 rng(424242);
  rlz_params params;
  for(size_type trial = 0; trial < 5; trial++)
  {
    std::vector<value_type> ref = oracle::random_values<value_type>(rng, 8000, 1, 4);
    size_type subs = 0;
    std::vector<value_type> target = substitute(rng, ref, 0.005, 4, &subs);
    rlz_parse parse = rlz_parse::parse(ref, target, params);
    size_type bound = subs + 1 + (target.size() + params.max_phrase_length - 1) / params.max_phrase_length;
    CHECK(parse.phrases() <= bound);
    check_parse(parse, ref, target, params);
  }
}

TEST_CASE("insertions and deletions stay parseable with differential phrases")
{
  std::mt19937_64 rng(777);
  std::vector<value_type> ref = oracle::random_values<value_type>(rng, 4000, 1, 4);
  std::vector<value_type> target;
  for(size_type i = 0; i < ref.size(); i++)
  {
    if(rng() % 100 == 0)
    {
      if(rng() % 2 == 0) { continue; }  // deletion
      target.push_back(value_type(rng() % 4) + 1);  // insertion
    }
    target.push_back(ref[i]);
  }
  rlz_params params;
  rlz_parse parse = rlz_parse::parse(ref, target, params);
  check_parse(parse, ref, target, params);
  // Shift-tolerant probing keeps most phrases differential.
  size_type diff = 0;
  for(size_type i = 1; i <= parse.phrases(); i++) { diff += parse.is_differential(i); }
  CHECK(diff * 2 > parse.phrases());
}

TEST_CASE("negative tokens parse like any others")
{
  std::mt19937_64 rng(5150);
  std::vector<value_type> ref = oracle::random_values<value_type>(rng, 1000, -3, 3);
  std::vector<value_type> target = substitute(rng, ref, 0.02, 3);
  for(value_type& v : target) { if(rng() % 50 == 0) { v = -v; } }
  rlz_parse parse = rlz_parse::parse(ref, target);
  check_parse(parse, ref, target, rlz_params());
}

TEST_CASE("foreign target symbols become literals")
{
  std::vector<value_type> ref = tokens_of("ACGTACGT");
  std::vector<value_type> target = tokens_of("ACGT");
  target.push_back(999);
  target.push_back(-7);
  rlz_parse parse = rlz_parse::parse(ref, target);
  check_parse(parse, ref, target, rlz_params());
  CHECK(parse.access(5, ref) == 999);
  CHECK(parse.access(6, ref) == -7);
}

TEST_CASE("parse serialization round trips byte identically")
{
  std::mt19937_64 rng(6666);
  std::vector<value_type> ref = oracle::random_values<value_type>(rng, 2000, 1, 4);
  std::vector<value_type> target = substitute(rng, ref, 0.01, 4);
  rlz_parse parse = rlz_parse::parse(ref, target);

  std::stringstream buffer;
  parse.serialize(buffer);
  rlz_parse copy;
  copy.load(buffer);

  std::ostringstream a, b;
  parse.serialize(a); copy.serialize(b);
  CHECK(a.str() == b.str());
  for(size_type j = 1; j <= target.size(); j += 17) { CHECK(copy.access(j, ref) == target[j - 1]); }
}

TEST_CASE("zigzag coding is an involution")
{
  for(value_type v : { value_type(0), value_type(1), value_type(-1), value_type(123456),
                       value_type(-123456), std::numeric_limits<value_type>::max(),
                       std::numeric_limits<value_type>::min() })
  {
    CHECK(zigzag_decode(zigzag_encode(v)) == v);
  }
}
