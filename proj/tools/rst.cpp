/*
 * rst: command-line driver for building, querying and benchmarking the
 * relative suffix tree and its components.
 *
 * Subcommands:
 *   build-ref  index a reference FASTA into a reference bundle
 *   build-rel  index a target FASTA relative to a reference bundle
 *   query      find / locate / extract against a loaded bundle pair
 *   bench      single-thread latency benchmarks, CSV on stdout
 *   synth      generate a synthetic mutant of a FASTA sequence
 *   verify     replay randomized queries against direct oracles
 *
 * All positions printed or accepted are 1-based.
 */

#include <CLI11.hpp>

#include <rst/bench.hpp>
#include <rst/bundle.hpp>
#include <rst/fasta.hpp>
#include <rst/mutation.hpp>
#include <rst/suffix_tree.hpp>

#include <algorithm>
#include <iostream>

using namespace rst;

namespace {

text_type
pattern_from_string(const std::string& s)
{
  text_type pattern(s.begin(), s.end());
  for(byte_type& c : pattern) { c = byte_type(std::toupper(c)); }
  return pattern;
}

// Query text for the maximal-substring benchmarks: an explicit FASTA if
// given, otherwise the target text itself, endmarker dropped.
text_type
bench_query_text(const std::string& query_path, const target_bundle& target, bool truncate_n)
{
  text_type query;
  if(!query_path.empty())
  {
    fasta_report report;
    query = ingest_fasta_file(query_path, &report);
  }
  else
  {
    query = reconstruct_text(target.rfm);
  }
  while(!query.empty() && query.back() == ENDMARKER) { query.pop_back(); }
  if(truncate_n)
  {
    text_type collapsed;
    collapsed.reserve(query.size());
    for(byte_type c : query)
    {
      if(c == 'N' && !collapsed.empty() && collapsed.back() == 'N') { continue; }
      collapsed.push_back(c);
    }
    query = std::move(collapsed);
  }
  return query;
}

void
print_fasta_report(const std::string& path, const fasta_report& report)
{
  std::cerr << "rst: " << path << ": " << report.records << " record(s), "
            << report.length << " characters, " << report.mapped
            << " mapped to N" << std::endl;
}

int
command_build_ref(const std::string& input, const std::string& output,
                  bool separate_records, const fm_params& params)
{
  fasta_report report;
  text_type text = ingest_fasta_file(input, &report, separate_records);
  print_fasta_report(input, report);
  reference_bundle bundle(text, params);
  bundle.save(output);
  std::cerr << "rst: wrote reference bundle " << output << " (n = " << bundle.size() << ")"
            << std::endl;
  return 0;
}

int
command_build_rel(const std::string& input, const std::string& reference_path,
                  const std::string& output, bool separate_records, bool with_rselect,
                  const rfm_params& index_params, const rlz_params& parse_params)
{
  reference_bundle reference;
  reference.load(reference_path);
  fasta_report report;
  text_type text = ingest_fasta_file(input, &report, separate_records);
  print_fasta_report(input, report);
  target_bundle bundle(reference, text, index_params, parse_params, with_rselect);
  bundle.save(output);
  std::cerr << "rst: wrote target bundle " << output << " (n = " << bundle.size()
            << ", " << (bundle.rfm.full() ? "full" : "basic") << " variant, "
            << bundle.rfm.lcs_length() << " aligned BWT positions, "
            << bundle.rlcp.phrases() << " LCP phrases)" << std::endl;
  return 0;
}

int
command_query(const std::string& reference_path, const std::string& target_path,
              const std::string& find_pattern, const std::string& locate_pattern,
              size_type from, size_type to)
{
  reference_bundle reference;
  reference.load(reference_path);
  target_bundle target;
  target.load(target_path, reference);

  if(!find_pattern.empty())
  {
    range_type range = target.rfm.find(pattern_from_string(find_pattern));
    if(empty_range(range)) { std::cout << "no occurrences" << std::endl; }
    else
    {
      std::cout << "range [" << range.first << ", " << range.second << "], "
                << range_length(range) << " occurrence(s)" << std::endl;
    }
    return 0;
  }
  if(!locate_pattern.empty())
  {
    if(!target.rfm.full())
    {
      std::cerr << "rst: error: locate requires the full variant" << std::endl;
      return 1;
    }
    range_type range = target.rfm.find(pattern_from_string(locate_pattern));
    std::vector<size_type> positions = target.rfm.locate(range);
    std::sort(positions.begin(), positions.end());
    for(size_type p : positions) { std::cout << p << '\n'; }
    std::cout << std::flush;
    return 0;
  }
  // extract
  if(from == 0 || to < from || to > target.size())
  {
    std::cerr << "rst: error: extract needs 1 <= from <= to <= " << target.size() << std::endl;
    return 1;
  }
  if(!target.rfm.full())
  {
    std::cerr << "rst: error: extract requires the full variant" << std::endl;
    return 1;
  }
  text_type window = target.rfm.extract(from, to);
  for(byte_type c : window) { std::cout << (c == ENDMARKER ? '$' : char(c)); }
  std::cout << std::endl;
  return 0;
}

int
command_bench(const std::string& reference_path, const std::string& target_path,
              std::vector<std::string> operations, const bench_params& params,
              const std::string& query_path, bool truncate_n)
{
  reference_bundle reference;
  reference.load(reference_path);
  target_bundle target;
  target.load(target_path, reference);

  bool all = operations.empty()
    || std::find(operations.begin(), operations.end(), "all") != operations.end();
  if(all) { operations = bench_operations(); }

  bool needs_query = std::find_if(operations.begin(), operations.end(), [](const std::string& op)
  {
    return op.rfind("maxsub", 0) == 0;
  }) != operations.end();
  text_type query;
  if(needs_query) { query = bench_query_text(query_path, target, truncate_n); }

  component_bytes sizes = measure_components(target);
  write_csv_header(std::cout);
  for(const std::string& op : operations)
  {
    try
    {
      bench_row row = run_bench(op, target, sizes, params, &query);
      write_csv_row(std::cout, row);
    }
    catch(const std::runtime_error& e)
    {
      // With the default op set, skip workloads the bundle cannot serve.
      if(!all) { throw; }
      std::cerr << "rst: skipping " << op << ": " << e.what() << std::endl;
    }
  }
  return 0;
}

int
command_synth(const std::string& input, const std::string& output, double rate,
              std::uint64_t seed)
{
  fasta_report report;
  text_type text = ingest_fasta_file(input, &report);
  print_fasta_report(input, report);
  mutation_model model{ .rate = rate, .seed = seed };
  mutation_stats stats;
  text_type mutant = synth_mutate(text, model, &stats);
  std::string name = "synthetic rate=" + std::to_string(rate) + " seed=" + std::to_string(seed);
  write_fasta_file(output, name, mutant);
  std::cerr << "rst: wrote " << output << " (" << mutant.size() - 1 << " characters, "
            << stats.events << " mutation events: " << stats.substitutions << " sub, "
            << stats.insertions << " ins, " << stats.deletions << " del)" << std::endl;
  return 0;
}

int
command_verify(const std::string& reference_path, const std::string& target_path,
               size_type scale)
{
  reference_bundle reference;
  reference.load(reference_path);
  target_bundle target;
  target.load(target_path, reference);
  return verify_bundles(reference, target, scale, std::cout) ? 0 : 1;
}

} // anonymous namespace

int
main(int argc, char** argv)
{
  CLI::App app("relative suffix tree toolkit");
  app.require_subcommand(1);

  // build-ref
  std::string ref_input, ref_output;
  bool ref_separate = false;
  fm_params ref_params;
  CLI::App* build_ref = app.add_subcommand("build-ref", "index a reference FASTA");
  build_ref->add_option("-i,--input", ref_input, "reference FASTA")->required();
  build_ref->add_option("-o,--output", ref_output, "output bundle")->required();
  build_ref->add_flag("--separate-records", ref_separate, "insert N between FASTA records");
  build_ref->add_option("--sa-interval", ref_params.sa_interval, "SA sample interval");
  build_ref->add_option("--isa-interval", ref_params.isa_interval, "ISA sample interval");

  // build-rel
  std::string rel_input, rel_reference, rel_output;
  bool rel_separate = false, rel_basic = false, rel_rselect = false;
  rfm_params rel_params;
  rlz_params rel_parse;
  CLI::App* build_rel = app.add_subcommand("build-rel", "index a target FASTA against a reference");
  build_rel->add_option("-i,--input", rel_input, "target FASTA")->required();
  build_rel->add_option("-r,--reference", rel_reference, "reference bundle")->required();
  build_rel->add_option("-o,--output", rel_output, "output bundle")->required();
  build_rel->add_flag("--separate-records", rel_separate, "insert N between FASTA records");
  build_rel->add_flag("--basic", rel_basic, "skip the full-variant extras (no locate/extract)");
  build_rel->add_flag("--rselect", rel_rselect, "add the relative select structure");
  build_rel->add_option("--sa-interval", rel_params.sa_interval, "SA sample interval");
  build_rel->add_option("--isa-interval", rel_params.isa_interval, "ISA sample interval");
  build_rel->add_option("--max-phrase", rel_parse.max_phrase_length, "RLZ copy length cap");
  build_rel->add_option("--probe-starts", rel_parse.probe_starts, "RLZ lookahead phrase starts");
  build_rel->add_option("--probe-shift", rel_parse.probe_shift, "RLZ source shifts probed");
  build_rel->add_option("--min-probe", rel_parse.min_probe_length, "RLZ shortest probed match");

  // query
  std::string query_reference, query_target, query_find, query_locate;
  size_type query_from = 0, query_to = 0;
  CLI::App* query = app.add_subcommand("query", "query a bundle pair");
  query->add_option("-r,--reference", query_reference, "reference bundle")->required();
  query->add_option("-t,--target", query_target, "target bundle")->required();
  CLI::Option* find_opt = query->add_option("--find", query_find, "count occurrences of a pattern");
  CLI::Option* locate_opt = query->add_option("--locate", query_locate, "list occurrences, sorted");
  CLI::Option* from_opt = query->add_option("--from", query_from, "first position to extract");
  CLI::Option* to_opt = query->add_option("--to", query_to, "last position to extract");
  find_opt->excludes(locate_opt)->excludes(from_opt)->excludes(to_opt);
  locate_opt->excludes(from_opt)->excludes(to_opt);
  from_opt->needs(to_opt);
  to_opt->needs(from_opt);

  // bench
  std::string bench_reference, bench_target, bench_query_path;
  std::vector<std::string> bench_ops;
  bench_params bench_opts;
  bench_opts.queries = 10000;
  bool bench_truncate = false;
  CLI::App* bench = app.add_subcommand("bench", "latency benchmarks, CSV on stdout");
  bench->add_option("-r,--reference", bench_reference, "reference bundle")->required();
  bench->add_option("-t,--target", bench_target, "target bundle")->required();
  bench->add_option("--op", bench_ops, "operations to run (default all)")
       ->check(CLI::IsMember([]()
       {
         std::vector<std::string> names = bench_operations();
         names.push_back("all");
         return names;
       }()));
  bench->add_option("--queries", bench_opts.queries, "queries per operation");
  bench->add_option("--seed", bench_opts.seed, "query generator seed");
  bench->add_option("--query", bench_query_path, "FASTA query for maxsub-* (default: the target)");
  bench->add_flag("--truncate-n", bench_truncate, "collapse N runs in the query text");

  // synth
  std::string synth_input, synth_output;
  double synth_rate = 0.0;
  std::uint64_t synth_seed = 0;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic mutant FASTA");
  synth->add_option("-i,--input", synth_input, "reference FASTA")->required();
  synth->add_option("-o,--output", synth_output, "output FASTA")->required();
  synth->add_option("--rate", synth_rate, "per-position mutation rate")->required()
       ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--seed", synth_seed, "generator seed");

  // verify
  std::string verify_reference, verify_target;
  size_type verify_scale = 1000;
  CLI::App* verify = app.add_subcommand("verify", "replay randomized queries against oracles");
  verify->add_option("-r,--reference", verify_reference, "reference bundle")->required();
  verify->add_option("-t,--target", verify_target, "target bundle")->required();
  verify->add_option("--scale", verify_scale, "query rounds to replay");

  CLI11_PARSE(app, argc, argv);

  try
  {
    if(build_ref->parsed())
    {
      return command_build_ref(ref_input, ref_output, ref_separate, ref_params);
    }
    if(build_rel->parsed())
    {
      rel_params.full = !rel_basic;
      return command_build_rel(rel_input, rel_reference, rel_output, rel_separate,
                               rel_rselect, rel_params, rel_parse);
    }
    if(query->parsed())
    {
      if(query_find.empty() && query_locate.empty() && query_from == 0)
      {
        std::cerr << "rst: error: query needs one of --find, --locate, --from/--to" << std::endl;
        return 1;
      }
      return command_query(query_reference, query_target, query_find, query_locate,
                           query_from, query_to);
    }
    if(bench->parsed())
    {
      return command_bench(bench_reference, bench_target, bench_ops, bench_opts,
                           bench_query_path, bench_truncate);
    }
    if(synth->parsed())
    {
      return command_synth(synth_input, synth_output, synth_rate, synth_seed);
    }
    if(verify->parsed())
    {
      return command_verify(verify_reference, verify_target, verify_scale);
    }
  }
  catch(const std::exception& e)
  {
    std::cerr << "rst: error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
