/*
 * mutation.hpp: synthetic mutants of a reference sequence.
 *
 * Each position of the reference body mutates independently with the given
 * rate. Mutations are 90% single-character substitutions, 5% insertions and
 * 5% deletions; indel lengths follow P(k) = 0.2 * 0.8^(k-1). The generator
 * is a seeded mt19937_64, so corpora reproduce bit-identically across runs
 * and platforms.
 */

#ifndef RST_MUTATION_HPP
#define RST_MUTATION_HPP

#include <rst/text.hpp>

namespace rst {

struct mutation_model
{
  double rate = 0.0;
  std::uint64_t seed = 0;

  // Class mix and indel length law; fixed by the experiment design.
  static constexpr double SUBSTITUTION = 0.90;
  static constexpr double INSERTION = 0.05;
  static constexpr double LENGTH_P = 0.2;     // P(k) = LENGTH_P * (1 - LENGTH_P)^(k-1)
};

struct mutation_stats
{
  size_type events = 0;
  size_type substitutions = 0;
  size_type insertions = 0;
  size_type deletions = 0;
  std::vector<size_type> indel_lengths;
};

// Applies the model to an endmarker-terminated text over {A,C,G,T,N}; the
// endmarker stays in place. rate = 0 returns the input unchanged.
text_type synth_mutate(const text_type& reference, const mutation_model& model,
                       mutation_stats* stats = nullptr);

} // namespace rst

#endif // RST_MUTATION_HPP
