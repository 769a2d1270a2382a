/*
 * bench.hpp: query benchmarks over a loaded bundle pair.
 *
 * Every workload runs on a single thread and reports the mean and 95th
 * percentile latency per query in microseconds, together with the size of
 * the exercised components in bits per character (8 * serialized bytes / n).
 * Point operations are timed per call. The traversal workload times the
 * whole preorder walk and derives per-node figures from 1024-node chunks;
 * the maximal-substring workloads split the query into slices and derive
 * per-character figures from per-slice timings.
 */

#ifndef RST_BENCH_HPP
#define RST_BENCH_HPP

#include <rst/bundle.hpp>

#include <iosfwd>
#include <random>

namespace rst {

struct bench_row
{
  std::string operation;
  size_type queries = 0;
  double mean_us = 0.0;
  double p95_us = 0.0;
  double size_bpc = 0.0;
};

struct bench_params
{
  size_type queries = 100000;
  std::uint64_t seed = 0;
};

struct component_bytes
{
  size_type rfm_bytes = 0;
  size_type rlcp_bytes = 0;
  size_type rsel_bytes = 0;
};

// Serialized payload sizes of the target components; equal to the section
// lengths a save() would write.
component_bytes measure_components(const target_bundle& target);

// The available workload names in canonical order.
const std::vector<std::string>& bench_operations();

// Runs one named workload. The maximal-substring workloads require a query
// text; the others ignore it. Workloads that need the full variant (locate,
// traverse, maxsub-*) throw on basic bundles.
bench_row run_bench(const std::string& operation, const target_bundle& target,
                    const component_bytes& sizes, const bench_params& params,
                    const text_type* query_text = nullptr);

// Range length distributed as 16^k with probability 0.5^k, capped at n.
size_type sample_range_length(std::mt19937_64& rng, size_type n);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const bench_row& row);

} // namespace rst

#endif // RST_BENCH_HPP
