#include <rst/bench.hpp>
#include <rst/suffix_tree.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rst {

namespace {

using clock_type = std::chrono::steady_clock;

double
elapsed_us(clock_type::time_point a, clock_type::time_point b)
{
  return std::chrono::duration<double, std::micro>(b - a).count();
}

double
percentile95(std::vector<double>& samples)
{
  if(samples.empty()) { return 0.0; }
  size_type k = size_type(std::ceil(0.95 * double(samples.size())));
  if(k == 0) { k = 1; }
  std::nth_element(samples.begin(), samples.begin() + (k - 1), samples.end());
  return samples[k - 1];
}

template<class Structure>
size_type
serialized_bytes(const Structure& x)
{
  std::ostringstream out(std::ios::binary);
  x.serialize(out);
  return out.tellp();
}

// Arguments are drawn before the timed window so generator cost stays out of
// the measurements.
template<class Op>
bench_row
point_bench(const std::string& name, const std::vector<size_type>& args, double bpc, Op&& op)
{
  std::vector<double> samples;
  samples.reserve(args.size());
  double total = 0.0;
  volatile std::uint64_t sink = 0;
  for(size_type arg : args)
  {
    clock_type::time_point t0 = clock_type::now();
    sink = sink + op(arg);
    clock_type::time_point t1 = clock_type::now();
    samples.push_back(elapsed_us(t0, t1));
    total += samples.back();
  }
  (void)sink;
  return { name, args.size(), total / double(args.size()), percentile95(samples), bpc };
}

std::vector<size_type>
random_positions(std::mt19937_64& rng, size_type n, size_type count)
{
  std::uniform_int_distribution<size_type> pos(1, n);
  std::vector<size_type> args(count);
  for(size_type& a : args) { a = pos(rng); }
  return args;
}

} // anonymous namespace

component_bytes
measure_components(const target_bundle& target)
{
  component_bytes sizes;
  sizes.rfm_bytes = serialized_bytes(target.rfm);
  sizes.rlcp_bytes = serialized_bytes(target.rlcp);
  if(target.rsel) { sizes.rsel_bytes = serialized_bytes(*(target.rsel)); }
  return sizes;
}

const std::vector<std::string>&
bench_operations()
{
  static const std::vector<std::string> names =
  {
    "lf", "psi", "lcp-random", "lcp-seq", "nsv", "psv", "rmq",
    "locate", "traverse", "maxsub-fwd", "maxsub-bwd"
  };
  return names;
}

size_type
sample_range_length(std::mt19937_64& rng, size_type n)
{
  size_type len = 16;
  while(len < n && (rng() & 1)) { len *= 16; }
  return std::min(len, n);
}

bench_row
run_bench(const std::string& operation, const target_bundle& target,
          const component_bytes& sizes, const bench_params& params,
          const text_type* query_text)
{
  size_type n = target.rfm.size();
  if(n == 0) { throw std::invalid_argument("bench: empty bundle"); }
  std::mt19937_64 rng(params.seed);
  const rselect* rs = (target.rsel ? &*(target.rsel) : nullptr);

  auto bpc = [&](size_type bytes) { return 8.0 * double(bytes) / double(n); };
  double rfm_bpc = bpc(sizes.rfm_bytes + (rs != nullptr ? sizes.rsel_bytes : 0));
  double rlcp_bpc = bpc(sizes.rlcp_bytes);

  auto require_full = [&]()
  {
    if(!target.rfm.full())
    {
      throw std::runtime_error("bench: " + operation + " requires the full variant");
    }
  };

  if(operation == "lf")
  {
    return point_bench(operation, random_positions(rng, n, params.queries), rfm_bpc,
                       [&](size_type i) { return target.rfm.lf(i); });
  }
  if(operation == "psi")
  {
    return point_bench(operation, random_positions(rng, n, params.queries), rfm_bpc,
                       [&](size_type i) { return target.rfm.psi(i, rs); });
  }
  if(operation == "lcp-random")
  {
    return point_bench(operation, random_positions(rng, n, params.queries), rlcp_bpc,
                       [&](size_type i) { return target.rlcp.access(i).value; });
  }
  if(operation == "lcp-seq")
  {
    // Sequential scans in 1024-position chunks; figures are per position.
    constexpr size_type CHUNK = 1024;
    size_type chunks = (params.queries + CHUNK - 1) / CHUNK;
    std::vector<double> samples;
    samples.reserve(chunks);
    double total = 0.0;
    size_type positions = 0;
    volatile std::uint64_t sink = 0;
    for(size_type c = 0; c < chunks; c++)
    {
      size_type length = std::min(CHUNK, n);
      size_type sp = 1 + rng() % (n - length + 1);
      clock_type::time_point t0 = clock_type::now();
      std::vector<size_type> values = target.rlcp.extract(sp, sp + length - 1);
      clock_type::time_point t1 = clock_type::now();
      sink = sink + values.back();
      double us = elapsed_us(t0, t1);
      samples.push_back(us / double(length));
      total += us;
      positions += length;
    }
    (void)sink;
    return { operation, positions, total / double(positions), percentile95(samples), rlcp_bpc };
  }
  if(operation == "nsv")
  {
    return point_bench(operation, random_positions(rng, n, params.queries), rlcp_bpc,
                       [&](size_type i) { return target.rlcp.nsv(i).position; });
  }
  if(operation == "psv")
  {
    return point_bench(operation, random_positions(rng, n, params.queries), rlcp_bpc,
                       [&](size_type i) { return target.rlcp.psv(i).position; });
  }
  if(operation == "rmq")
  {
    std::vector<size_type> starts(params.queries), lengths(params.queries);
    for(size_type q = 0; q < params.queries; q++)
    {
      lengths[q] = sample_range_length(rng, n);
      starts[q] = 1 + rng() % (n - lengths[q] + 1);
    }
    size_type q = 0;
    bench_row row = point_bench(operation, starts, rlcp_bpc, [&](size_type sp)
    {
      size_type result = target.rlcp.rmq(sp, sp + lengths[q] - 1).position;
      q++;
      return result;
    });
    return row;
  }
  if(operation == "locate")
  {
    require_full();
    return point_bench(operation, random_positions(rng, n, params.queries), rfm_bpc,
                       [&](size_type i) { return target.rfm.locate(i); });
  }
  if(operation == "traverse")
  {
    require_full();
    suffix_tree st(target.rfm, target.rlcp, rs);
    constexpr size_type CHUNK = 1024;
    std::vector<double> samples;
    size_type nodes = 0;
    clock_type::time_point start = clock_type::now();
    clock_type::time_point chunk_start = start;
    st.preorder([&](const st_node&)
    {
      nodes++;
      if(nodes % CHUNK == 0)
      {
        clock_type::time_point now = clock_type::now();
        samples.push_back(elapsed_us(chunk_start, now) / double(CHUNK));
        chunk_start = now;
      }
    });
    double total = elapsed_us(start, clock_type::now());
    if(samples.empty()) { samples.push_back(total / double(nodes)); }
    return { operation, nodes, total / double(nodes), percentile95(samples), rfm_bpc + rlcp_bpc };
  }
  if(operation == "maxsub-fwd" || operation == "maxsub-bwd")
  {
    require_full();
    if(query_text == nullptr || query_text->empty())
    {
      throw std::runtime_error("bench: " + operation + " requires a query text");
    }
    suffix_tree st(target.rfm, target.rlcp, rs);
    const text_type& query = *query_text;
    bool forward = (operation == "maxsub-fwd");

    // Per-slice runs; figures are per query character.
    size_type slices = std::min<size_type>(100, query.size());
    std::vector<double> samples;
    samples.reserve(slices);
    double total = 0.0;
    size_type chars = 0;
    volatile std::uint64_t sink = 0;
    for(size_type s = 0; s < slices; s++)
    {
      size_type from = (s * query.size()) / slices;
      size_type to = ((s + 1) * query.size()) / slices;
      text_type slice(query.begin() + from, query.begin() + to);
      clock_type::time_point t0 = clock_type::now();
      std::vector<maximal_match> rows = (forward ? st.maximal_substrings_forward(slice)
                                                 : st.maximal_substrings_backward(slice));
      clock_type::time_point t1 = clock_type::now();
      sink = sink + rows.size();
      double us = elapsed_us(t0, t1);
      samples.push_back(us / double(slice.size()));
      total += us;
      chars += slice.size();
    }
    (void)sink;
    return { operation, chars, total / double(chars), percentile95(samples), rfm_bpc + rlcp_bpc };
  }

  throw std::invalid_argument("bench: unknown operation " + operation);
}

void
write_csv_header(std::ostream& out)
{
  out << "operation,queries,mean_us,p95_us,size_bpc" << '\n';
}

void
write_csv_row(std::ostream& out, const bench_row& row)
{
  out << row.operation << ',' << row.queries << ','
      << std::fixed << std::setprecision(4) << row.mean_us << ','
      << std::fixed << std::setprecision(4) << row.p95_us << ','
      << std::fixed << std::setprecision(4) << row.size_bpc << '\n';
}

} // namespace rst
