// Command-line front end: sampling, attack demonstrations, exact process
// verification, goodness-of-fit, and benchmarks, all reproducible from a
// manifest plus a seed or replay tape.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "refinedp/attacks.hpp"
#include "refinedp/decimal.hpp"
#include "refinedp/harness.hpp"
#include "refinedp/mechanisms.hpp"
#include "refinedp/sampler.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace refinedp;

constexpr const char* kToolVersion = "1.0.0";
constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitVerification = 3;

struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact parameter: the user's text, the rational it denotes, and the
// dyadic actually used (rounded up when the rational is not dyadic).
struct ExactParam {
  std::string text;
  BigFloat value;
  bool rounded_up = false;
};

ExactParam parse_param(const std::string& text, int param_prec) {
  Rational r;
  try {
    r = parse_exact_rational(text);
  } catch (const std::exception& e) {
    throw ParameterError(std::string("cannot parse '") + text +
                         "' as an exact number: " + e.what());
  }
  ExactParam p;
  p.text = text;
  p.rounded_up = !is_dyadic(r);
  p.value = rational_to_bigfloat_round_up(r, param_prec);
  return p;
}

json param_json(const ExactParam& p) {
  json j;
  j["text"] = p.text;
  j["dyadic"] = p.value.to_hex_string();
  j["rounded_up"] = p.rounded_up;
  return j;
}

// Entropy configuration shared by the subcommands.
struct EntropySpec {
  std::optional<std::uint64_t> seed;
  std::string tape_file;

  BitTape make() const {
    if (!tape_file.empty())
      throw std::logic_error("tape replay handled by the caller");
    if (seed) return BitTape::seeded(*seed);
    return BitTape::live();
  }

  json describe() const {
    json j;
    if (!tape_file.empty()) {
      j["mode"] = "replay";
      j["tape_file"] = tape_file;
    } else if (seed) {
      j["mode"] = "seeded (test-only deterministic generator)";
      j["seed"] = *seed;
    } else {
      j["mode"] = "live (operating system entropy)";
    }
    return j;
  }
};

void apply_env_base_prec(SamplerConfig& cfg) {
  const char* env = std::getenv("REFINE_DP_PRECISION_BASE");
  if (!env || !*env) return;
  try {
    cfg.base_prec = std::stoi(env);
  } catch (const std::exception&) {
    throw ParameterError("REFINE_DP_PRECISION_BASE must be an integer");
  }
}

void write_manifest(const std::string& path, const std::string& subcommand,
                    const json& parameters, const EntropySpec& entropy,
                    const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "refinedp";
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  m["parameters"] = parameters;
  m["entropy"] = entropy.describe();
  m["outputs"] = outputs;
  std::ofstream os(path);
  if (!os) throw ParameterError("cannot write manifest to " + path);
  os << m.dump(2) << '\n';
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw ParameterError("cannot write to " + path);
  return file;
}

void validate_config_or_parameter_error(const SamplerConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ParameterError(e.what());
  }
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const std::string& mu_text, const std::string& beta_text,
               long n, SamplerConfig cfg, int param_prec,
               const std::string& trace_out, const EntropySpec& entropy,
               const std::string& format, const std::string& out_path,
               const std::string& manifest_path) {
  apply_env_base_prec(cfg);
  validate_config_or_parameter_error(cfg);
  if (n < 1) throw ParameterError("--n must be >= 1");

  std::ofstream out_file;
  std::ostream& out = open_output(out_file, out_path);
  std::ofstream trace_stream;
  if (!trace_out.empty()) {
    trace_stream.open(trace_out);
    if (!trace_stream) throw ParameterError("cannot write to " + trace_out);
  }

  struct Row {
    long index;
    std::optional<double> value;
    int iterations;
  };
  std::vector<Row> rows;
  json params;

  if (!entropy.tape_file.empty()) {
    // Replay: parameters and tapes come from the recorded traces.
    std::ifstream in(entropy.tape_file);
    if (!in) throw ParameterError("cannot read " + entropy.tape_file);
    long index = 0;
    std::string first_mu, first_beta;
    while (in.peek() != std::char_traits<char>::eof()) {
      TracedRun run = read_trace(in);
      if (index == 0) {
        first_mu = run.params.mu.to_hex_string();
        first_beta = run.params.beta.to_hex_string();
      }
      BitTape tape = tape_from_trace(run.cfg, run.trace);
      LaplaceDistribution dist(run.params);
      SampleTrace<double> trace;
      auto r = refine_sample(dist, run.cfg, tape, Binary64Grid(), &trace);
      if (!trace_out.empty())
        write_trace(trace_stream, run.params, run.cfg, trace);
      rows.push_back({index++, r.value, r.iterations});
      in >> std::ws;
    }
    params["mu_dyadic"] = first_mu;
    params["beta_dyadic"] = first_beta;
    params["n"] = index;
  } else {
    ExactParam mu = parse_param(mu_text, param_prec);
    ExactParam beta = parse_param(beta_text, param_prec);
    if (beta.value.sign() <= 0)
      throw ParameterError("--beta must be positive");
    LaplaceParams lp(mu.value, beta.value);
    BitTape tape = entropy.make();
    for (long i = 0; i < n; ++i) {
      SampleTrace<double> trace;
      tape.set_recording(!trace_out.empty());
      auto r = sample_laplace(lp, cfg, tape, Binary64Grid(),
                              trace_out.empty() ? nullptr : &trace);
      if (!trace_out.empty()) write_trace(trace_stream, lp, cfg, trace);
      rows.push_back({i, r.value, r.iterations});
    }
    params["mu"] = param_json(mu);
    params["beta"] = param_json(beta);
    params["n"] = n;
    params["param_prec"] = param_prec;
  }
  params["chunk_bits"] = cfg.chunk_bits;
  params["base_prec"] = cfg.base_prec;
  params["max_iterations"] = cfg.max_iterations;
  params["format"] = format;

  bool any_bottom = false;
  if (format == "csv") {
    out << "index,value,bits,iterations\n";
    for (const Row& r : rows) {
      out << r.index << ',';
      if (r.value) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *r.value);
        out << buf << ',' << std::hex << to_bits(*r.value) << std::dec;
      } else {
        out << "bottom,";
        any_bottom = true;
      }
      out << ',' << r.iterations << '\n';
    }
  } else if (format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      json item;
      item["index"] = r.index;
      if (r.value) {
        item["value"] = *r.value;
        std::ostringstream hex;
        hex << std::hex << to_bits(*r.value);
        item["bits"] = hex.str();
      } else {
        item["value"] = nullptr;
        any_bottom = true;
      }
      item["iterations"] = r.iterations;
      arr.push_back(item);
    }
    out << arr.dump(2) << '\n';
  } else {
    throw ParameterError("--format must be csv or json");
  }

  std::vector<std::string> outputs;
  if (!out_path.empty()) outputs.push_back(out_path);
  if (!trace_out.empty()) outputs.push_back(trace_out);
  write_manifest(manifest_path, "sample", params, entropy, outputs);
  if (any_bottom) {
    std::cerr << "sample: at least one draw hit the iteration cap\n";
    return kExitVerification;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// attack

json report_json(const AttackReport& rep) {
  json j;
  j["mechanism"] = rep.mechanism;
  j["input0"] = rep.input0;
  j["input1"] = rep.input1;
  j["samples_per_side"] = rep.samples_per_side;
  j["predicate"] = rep.predicate;
  j["count0"] = rep.count0;
  j["count1"] = rep.count1;
  j["fraction0"] = rep.fraction0;
  j["fraction1"] = rep.fraction1;
  j["verdict"] = rep.verdict;
  j["seed"] = rep.seed;
  return j;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParameterError("cannot parse dataset value '" + item + "'");
    }
  }
  if (out.size() < 2) throw ParameterError("dataset needs >= 2 values");
  return out;
}

int cmd_attack(const std::string& pattern, const std::string& variant,
               long n, std::uint64_t seed, bool safe, double mu0, double mu1,
               double beta, std::string d1_text, std::string d2_text,
               const std::string& out_path, const std::string& manifest_path) {
  AttackReport rep;
  json params;
  params["pattern"] = pattern;
  params["n"] = n;
  params["safe"] = safe;

  try {
    if (pattern == "additive") {
      rep = run_additive_attack(mu0, mu1, beta, n, seed, safe);
      params["mu0"] = mu0;
      params["mu1"] = mu1;
      params["beta"] = beta;
    } else if (pattern == "quantile") {
      UniformVariant v;
      if (variant == "coarse") {
        v = UniformVariant::coarse;
        if (d1_text.empty()) d1_text = "0,0,1";
        if (d2_text.empty()) d2_text = "0,0.25,1";
      } else if (variant == "fine") {
        v = UniformVariant::fine;
        if (d1_text.empty()) d1_text = "-1,1,1";
        if (d2_text.empty()) d2_text = "-1,0,1";
      } else {
        throw ParameterError("--variant must be coarse or fine");
      }
      rep = run_quantile_attack(parse_double_list(d1_text),
                                parse_double_list(d2_text), v, n, seed);
      params["variant"] = variant;
      params["d1"] = d1_text;
      params["d2"] = d2_text;
    } else {
      throw ParameterError("--pattern must be additive or quantile");
    }
  } catch (const std::invalid_argument& e) {
    throw ParameterError(e.what());
  }

  std::ofstream out_file;
  std::ostream& out = open_output(out_file, out_path);
  out << report_json(rep).dump(2) << '\n';

  EntropySpec entropy;
  entropy.seed = seed;
  std::vector<std::string> outputs;
  if (!out_path.empty()) outputs.push_back(out_path);
  write_manifest(manifest_path, "attack", params, entropy, outputs);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

PiecewiseLinearDistribution parse_dist_spec(const std::string& spec) {
  if (spec == "ramp")
    return PiecewiseLinearDistribution(
        {BigFloat(0), BigFloat(1, -1), BigFloat(1)},
        {BigFloat(0), BigFloat(1, -2), BigFloat(1)});
  // "x0:u0,x1:u1,..." with exact dyadic coordinates.
  std::vector<BigFloat> xs, us;
  std::stringstream ss(spec);
  std::string pair;
  while (std::getline(ss, pair, ',')) {
    auto colon = pair.find(':');
    if (colon == std::string::npos)
      throw ParameterError("--dist expects 'ramp' or x:u pairs");
    Rational x = parse_exact_rational(pair.substr(0, colon));
    Rational u = parse_exact_rational(pair.substr(colon + 1));
    if (!is_dyadic(x) || !is_dyadic(u))
      throw ParameterError("--dist coordinates must be dyadic");
    xs.push_back(dyadic_to_bigfloat(x));
    us.push_back(dyadic_to_bigfloat(u));
  }
  try {
    return PiecewiseLinearDistribution(std::move(xs), std::move(us));
  } catch (const std::invalid_argument& e) {
    throw ParameterError(e.what());
  }
}

int cmd_verify(int toy_grid, int rounds, const std::string& dist_spec,
               const std::string& out_path, const std::string& manifest_path) {
  if (toy_grid < 2 || toy_grid > 31 || (toy_grid & (toy_grid - 1)) != 0)
    throw ParameterError("--toy-grid must be a power of two in [2, 31]");
  if (rounds < 1 || rounds > 20)
    throw ParameterError("--rounds must be in [1, 20]");

  PiecewiseLinearDistribution dist = parse_dist_spec(dist_spec);
  int log2n = 0;
  while ((1 << log2n) < toy_grid) ++log2n;
  std::vector<BigFloat> pts;
  for (int i = 0; i <= toy_grid; ++i) pts.push_back(BigFloat(i, -log2n));
  ToyGrid grid(std::move(pts));
  if (dist.support_min() < grid.points().front() ||
      dist.support_max() > grid.points().back())
    throw ParameterError("distribution support must lie within [0, 1]");

  SamplerConfig cfg;
  cfg.chunk_bits = 1;
  apply_env_base_prec(cfg);
  validate_config_or_parameter_error(cfg);

  ExactDistribution q = exact_rounded_distribution(grid, dist);
  bool never_exceeds = true;
  bool tvd_matches = true;
  bool bottom_monotone = true;
  Rational prev_bottom(2);
  json per_round = json::array();
  for (int k = 1; k <= rounds; ++k) {
    ExactDistribution p = enumerate_process(grid, dist, cfg, k);
    for (const auto& [s, pr] : p.probs) {
      Rational qs = q.probs.count(s) ? q.probs.at(s) : Rational(0);
      if (pr > qs) never_exceeds = false;
    }
    Rational dist_tv = tvd(p, q);
    if (dist_tv != p.bottom) tvd_matches = false;
    if (p.bottom > prev_bottom) bottom_monotone = false;
    prev_bottom = p.bottom;
    json r;
    r["rounds"] = k;
    std::ostringstream b, t;
    b << p.bottom;
    t << dist_tv;
    r["bottom_probability"] = b.str();
    r["tvd_to_rounded_target"] = t.str();
    per_round.push_back(r);
  }

  json rep;
  rep["grid_points"] = toy_grid + 1;
  rep["dist"] = dist_spec;
  rep["rounds"] = rounds;
  rep["process_never_exceeds_target"] = never_exceeds;
  rep["tvd_equals_bottom_probability"] = tvd_matches;
  rep["bottom_probability_non_increasing"] = bottom_monotone;
  rep["per_round"] = per_round;
  bool all_pass = never_exceeds && tvd_matches && bottom_monotone;
  rep["verdict"] = all_pass ? "pass" : "fail";

  std::ofstream out_file;
  std::ostream& out = open_output(out_file, out_path);
  out << rep.dump(2) << '\n';

  json params;
  params["toy_grid"] = toy_grid;
  params["rounds"] = rounds;
  params["dist"] = dist_spec;
  EntropySpec entropy;  // exhaustive: no randomness involved
  std::vector<std::string> outputs;
  if (!out_path.empty()) outputs.push_back(out_path);
  write_manifest(manifest_path, "verify", params, entropy, outputs);
  if (!all_pass) throw VerificationError("exact process identities failed");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

int cmd_fit(long n, int buckets, const std::string& mu_text,
            const std::string& beta_text, int param_prec,
            const EntropySpec& entropy, const std::string& out_path,
            const std::string& manifest_path) {
  if (n < 10000) throw ParameterError("--n must be >= 10000");
  if (buckets < 2 || buckets > 1000)
    throw ParameterError("--buckets must be in [2, 1000]");
  ExactParam mu = parse_param(mu_text, param_prec);
  ExactParam beta = parse_param(beta_text, param_prec);
  if (beta.value.sign() <= 0) throw ParameterError("--beta must be positive");

  SamplerConfig cfg;
  apply_env_base_prec(cfg);
  validate_config_or_parameter_error(cfg);
  LaplaceParams lp(mu.value, beta.value);
  BitTape tape = entropy.make();
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    auto r = sample_laplace(lp, cfg, tape);
    if (!r.value) throw VerificationError("sampler hit the iteration cap");
    samples.push_back(*r.value);
  }

  double mu_d = next_float_up(mu.value);
  double beta_d = next_float_up(beta.value);
  BucketSpec spec = equal_probability_buckets(mu_d, beta_d,
                                              static_cast<std::size_t>(buckets));
  LaplaceDistribution dist(lp);
  FitReport fit;
  try {
    fit = goodness_of_fit(samples, dist, spec);
  } catch (const std::invalid_argument& e) {
    throw ParameterError(e.what());
  }

  json rep;
  rep["samples"] = n;
  rep["buckets"] = buckets;
  rep["chi_square"] = fit.chi_square;
  rep["degrees_of_freedom"] = fit.degrees_of_freedom;
  rep["p_value"] = fit.p_value;
  rep["observed"] = fit.observed;
  rep["expected"] = fit.expected;
  rep["verdict"] = fit.p_value > 1e-4 ? "pass" : "fail";

  std::ofstream out_file;
  std::ostream& out = open_output(out_file, out_path);
  out << rep.dump(2) << '\n';

  json params;
  params["mu"] = param_json(mu);
  params["beta"] = param_json(beta);
  params["n"] = n;
  params["buckets"] = buckets;
  params["param_prec"] = param_prec;
  std::vector<std::string> outputs;
  if (!out_path.empty()) outputs.push_back(out_path);
  write_manifest(manifest_path, "fit", params, entropy, outputs);
  if (fit.p_value <= 1e-4)
    throw VerificationError("goodness of fit rejected the sampler");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

int cmd_bench(long n, SamplerConfig cfg, const std::string& mu_text,
              const std::string& beta_text, int param_prec,
              const EntropySpec& entropy, const std::string& out_path,
              const std::string& manifest_path) {
  apply_env_base_prec(cfg);
  validate_config_or_parameter_error(cfg);
  if (n < 1) throw ParameterError("--n must be >= 1");
  ExactParam mu = parse_param(mu_text, param_prec);
  ExactParam beta = parse_param(beta_text, param_prec);
  if (beta.value.sign() <= 0) throw ParameterError("--beta must be positive");

  BitTape tape = entropy.make();
  BenchReport b = bench(LaplaceParams(mu.value, beta.value), cfg, n, tape);

  json rep;
  rep["samples"] = b.samples;
  rep["seconds"] = b.seconds;
  rep["samples_per_second"] = b.samples_per_second;
  json hist = json::array();
  for (std::size_t i = 1; i < b.iteration_histogram.size(); ++i) {
    if (b.iteration_histogram[i] == 0) continue;
    json h;
    h["iterations"] = i;
    h["count"] = b.iteration_histogram[i];
    hist.push_back(h);
  }
  rep["iteration_histogram"] = hist;
  rep["bottom_count"] = b.bottom_count;

  std::ofstream out_file;
  std::ostream& out = open_output(out_file, out_path);
  out << rep.dump(2) << '\n';

  json params;
  params["mu"] = param_json(mu);
  params["beta"] = param_json(beta);
  params["n"] = n;
  params["chunk_bits"] = cfg.chunk_bits;
  params["base_prec"] = cfg.base_prec;
  std::vector<std::string> outputs;
  if (!out_path.empty()) outputs.push_back(out_path);
  write_manifest(manifest_path, "bench", params, entropy, outputs);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correctly rounded noise sampling by interval refining"};
  app.require_subcommand(1);

  // Shared option storage.
  std::string mu_text = "0", beta_text = "1";
  long n = 1;
  int param_prec = 128;
  SamplerConfig cfg;
  std::string trace_out, tape_in, format = "csv", out_path, manifest_path;
  std::optional<std::uint64_t> seed;

  auto* sample = app.add_subcommand("sample", "Draw correctly rounded Laplace samples");
  sample->add_option("--mu", mu_text, "location (exact decimal/rational)");
  sample->add_option("--beta", beta_text, "scale (exact decimal/rational)");
  sample->add_option("--n", n, "number of samples")->default_val(1);
  sample->add_option("--chunk-bits", cfg.chunk_bits, "bits per refinement round");
  sample->add_option("--max-iter", cfg.max_iterations, "iteration cap");
  sample->add_option("--param-prec", param_prec,
                     "round-up precision for non-dyadic parameters");
  sample->add_option("--trace-out", trace_out, "write replayable traces here");
  sample->add_option("--tape-in", tape_in, "replay a recorded trace file");
  sample->add_option("--seed", seed, "test-only deterministic seed");
  sample->add_option("--format", format, "csv or json");
  sample->add_option("--out", out_path, "output file (default stdout)");
  sample->add_option("--manifest", manifest_path, "manifest path");

  std::string pattern = "additive", variant = "coarse", d1_text, d2_text;
  long attack_n = 100000;
  std::uint64_t attack_seed = 1;
  bool safe = false;
  double mu0 = 0.0, mu1 = 1.0;
  double attack_beta = 1.0;
  auto* attack = app.add_subcommand("attack", "Reproduce precision-based distinguishing attacks");
  attack->add_option("--pattern", pattern, "additive or quantile");
  attack->add_option("--variant", variant, "uniform variant: coarse or fine");
  attack->add_option("--n", attack_n, "samples per side")->default_val(100000);
  attack->add_option("--seed", attack_seed, "test-only deterministic seed");
  attack->add_flag("--safe", safe, "route through the safe mechanism");
  attack->add_option("--mu0", mu0, "first neighboring input (additive)");
  attack->add_option("--mu1", mu1, "second neighboring input (additive)");
  attack->add_option("--beta", attack_beta, "noise scale (additive)");
  attack->add_option("--d1", d1_text, "first dataset, comma separated (quantile)");
  attack->add_option("--d2", d2_text, "second dataset, comma separated (quantile)");
  attack->add_option("--out", out_path, "report file (default stdout)");
  attack->add_option("--manifest", manifest_path, "manifest path");

  int toy_grid = 8, rounds = 12;
  std::string dist_spec = "ramp";
  auto* verify = app.add_subcommand("verify", "Exhaustively verify the sampling process on a toy grid");
  verify->add_option("--toy-grid", toy_grid, "number of grid cells (power of two)");
  verify->add_option("--rounds", rounds, "refinement rounds to enumerate");
  verify->add_option("--dist", dist_spec, "'ramp' or piecewise CDF x:u pairs");
  verify->add_option("--out", out_path, "report file (default stdout)");
  verify->add_option("--manifest", manifest_path, "manifest path");

  long fit_n = 1000000;
  int buckets = 40;
  auto* fit = app.add_subcommand("fit", "Chi-square goodness of fit of the sampler");
  fit->add_option("--n", fit_n, "number of samples")->default_val(1000000);
  fit->add_option("--buckets", buckets, "equal-probability buckets");
  fit->add_option("--mu", mu_text, "location");
  fit->add_option("--beta", beta_text, "scale");
  fit->add_option("--param-prec", param_prec, "round-up precision");
  fit->add_option("--seed", seed, "test-only deterministic seed");
  fit->add_option("--out", out_path, "report file (default stdout)");
  fit->add_option("--manifest", manifest_path, "manifest path");

  long bench_n = 1000000;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark sampling throughput");
  bench_cmd->add_option("--n", bench_n, "number of samples")->default_val(1000000);
  bench_cmd->add_option("--chunk-bits", cfg.chunk_bits, "bits per refinement round");
  bench_cmd->add_option("--mu", mu_text, "location");
  bench_cmd->add_option("--beta", beta_text, "scale");
  bench_cmd->add_option("--param-prec", param_prec, "round-up precision");
  bench_cmd->add_option("--seed", seed, "test-only deterministic seed");
  bench_cmd->add_option("--out", out_path, "report file (default stdout)");
  bench_cmd->add_option("--manifest", manifest_path, "manifest path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParameter;
  }

  try {
    EntropySpec entropy;
    entropy.seed = seed;
    entropy.tape_file = tape_in;
    if (manifest_path.empty())
      manifest_path = app.get_subcommands().front()->get_name() +
                      ".manifest.json";
    if (sample->parsed())
      return cmd_sample(mu_text, beta_text, n, cfg, param_prec, trace_out,
                        entropy, format, out_path, manifest_path);
    if (attack->parsed())
      return cmd_attack(pattern, variant, attack_n, attack_seed, safe, mu0,
                        mu1, attack_beta, d1_text, d2_text, out_path,
                        manifest_path);
    if (verify->parsed())
      return cmd_verify(toy_grid, rounds, dist_spec, out_path, manifest_path);
    if (fit->parsed())
      return cmd_fit(fit_n, buckets, mu_text, beta_text, param_prec, entropy,
                     out_path, manifest_path);
    if (bench_cmd->parsed())
      return cmd_bench(bench_n, cfg, mu_text, beta_text, param_prec, entropy,
                       out_path, manifest_path);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const SamplerOverflow& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParameter;
  }
  return kExitOk;
}
