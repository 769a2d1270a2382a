#include <rst/mutation.hpp>

#include <random>
#include <stdexcept>

namespace rst {

namespace {

constexpr byte_type BASES[4] = { 'A', 'C', 'G', 'T' };

byte_type
random_base(std::mt19937_64& rng)
{
  return BASES[std::uniform_int_distribution<int>(0, 3)(rng)];
}

// Uniform over ACGT minus the current character; N has no complement set,
// so it substitutes to a uniform base.
byte_type
substitute(byte_type current, std::mt19937_64& rng)
{
  if(current == 'N') { return random_base(rng); }
  byte_type pick = current;
  while(pick == current) { pick = random_base(rng); }
  return pick;
}

} // anonymous namespace

text_type
synth_mutate(const text_type& reference, const mutation_model& model, mutation_stats* stats)
{
  if(reference.empty() || reference.back() != ENDMARKER)
  {
    throw std::invalid_argument("synth_mutate: the reference must be endmarker-terminated");
  }
  if(model.rate < 0.0 || model.rate > 1.0)
  {
    throw std::invalid_argument("synth_mutate: the mutation rate must lie in [0, 1]");
  }

  mutation_stats local;
  if(stats == nullptr) { stats = &local; }
  *stats = mutation_stats();

  if(model.rate == 0.0) { return reference; }

  std::mt19937_64 rng(model.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::geometric_distribution<size_type> extra(mutation_model::LENGTH_P);

  text_type result;
  result.reserve(reference.size() + reference.size() / 16);
  size_type body = reference.size() - 1;
  size_type i = 0;
  while(i < body)
  {
    if(coin(rng) >= model.rate) { result.push_back(reference[i]); i++; continue; }

    stats->events++;
    double cls = coin(rng);
    if(cls < mutation_model::SUBSTITUTION)
    {
      stats->substitutions++;
      result.push_back(substitute(reference[i], rng));
      i++;
    }
    else if(cls < mutation_model::SUBSTITUTION + mutation_model::INSERTION)
    {
      size_type length = extra(rng) + 1;
      stats->insertions++;
      stats->indel_lengths.push_back(length);
      for(size_type j = 0; j < length; j++) { result.push_back(random_base(rng)); }
      result.push_back(reference[i]);
      i++;
    }
    else
    {
      size_type length = extra(rng) + 1;
      stats->deletions++;
      stats->indel_lengths.push_back(length);
      i += length; // May run past the body; the endmarker is appended below regardless.
    }
  }

  result.push_back(ENDMARKER);
  return result;
}

} // namespace rst
