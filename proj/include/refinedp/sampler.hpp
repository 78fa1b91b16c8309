#ifndef REFINEDP_SAMPLER_HPP
#define REFINEDP_SAMPLER_HPP

#include <cmath>
#include <cstdint>
#include <istream>
#include <type_traits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "refinedp/bit_tape.hpp"
#include "refinedp/bigfloat.hpp"
#include "refinedp/distributions.hpp"
#include "refinedp/enclosure.hpp"
#include "refinedp/float_grid.hpp"

namespace refinedp {

struct SamplerConfig {
  int chunk_bits = 63;   // bits drawn per iteration, 1..63
  int base_prec = 16;    // working-precision floor, bits
  int prec_step = 1;     // extra precision per iteration, scaled by chunk_bits
  int max_iterations = 64;  // hitting the cap yields the explicit bottom
  enum class Overflow { infinity, error } overflow_mode = Overflow::infinity;

  void validate() const {
    if (chunk_bits < 1 || chunk_bits > 63)
      throw std::invalid_argument("chunk_bits must be in [1, 63]");
    if (base_prec < 16) throw std::invalid_argument("base_prec must be >= 16");
    if (prec_step < 1) throw std::invalid_argument("prec_step must be >= 1");
    if (max_iterations < 1)
      throw std::invalid_argument("max_iterations must be >= 1");
  }

  /// Working precision used on iteration k (1-based).
  int precision_at(int k) const {
    return base_prec + k * prec_step * chunk_bits;
  }
};

struct SamplerOverflow : std::range_error {
  SamplerOverflow()
      : std::range_error("enclosure rounded to an infinite grid value") {}
};

/// One refinement round: the dyadic interval, the chunk consumed, the
/// working precision, and the image enclosure it produced.
struct IterationRecord {
  BigFloat a;
  BigFloat b;
  std::uint64_t chunk_raw;  // raw tape bits, MSB first, pre-indexing
  int prec;
  Enclosure image;
};

template <typename GridPoint>
struct SampleTrace {
  std::vector<IterationRecord> iterations;
  std::optional<GridPoint> output;  // nullopt is the explicit bottom
};

/// The i-th of 2^chunk_bits equal subintervals of [a, b]; all endpoint
/// arithmetic is exact dyadic. Index 0 is the lowest subinterval. The
/// sampler maps a raw chunk to an index so that for chunk_bits = 1 a raw
/// bit 0 keeps the upper half and bit 1 the lower half.
inline std::pair<BigFloat, BigFloat> bisect_step(const BigFloat& a,
                                                 const BigFloat& b,
                                                 std::uint64_t index,
                                                 int chunk_bits) {
  if (chunk_bits < 1 || chunk_bits > 63)
    throw std::invalid_argument("chunk_bits must be in [1, 63]");
  if (index >= (std::uint64_t{1} << chunk_bits))
    throw std::invalid_argument("subinterval index out of range");
  BigFloat step = (b - a).mul_pow2(-chunk_bits);
  BigFloat lo = a + BigFloat(BigInt(index), 0) * step;
  return {lo, lo + step};
}

inline std::uint64_t chunk_to_index(std::uint64_t raw, int chunk_bits) {
  return ((std::uint64_t{1} << chunk_bits) - 1) - raw;
}

/// Returns the common round-up point iff both endpoints round up to the
/// same grid point.
template <typename Grid>
std::optional<typename Grid::grid_point> terminate_check(const Enclosure& e,
                                                         const Grid& grid) {
  auto lo = grid.round_up(e.lo);
  auto hi = grid.round_up(e.hi);
  if (lo && hi && *lo == *hi) return lo;
  return std::nullopt;
}

template <typename Grid>
struct SampleResult {
  std::optional<typename Grid::grid_point> value;  // nullopt is bottom
  int iterations = 0;
};

/// Interval-refining sampler: bisect the dyadic probability interval,
/// push it through the interval inverse CDF at escalating precision, and
/// stop once the whole image enclosure rounds up to one grid point.
/// A deterministic function of (dist, cfg, tape contents).
template <typename Grid>
SampleResult<Grid> refine_sample(
    const IntervalDistribution& dist, const SamplerConfig& cfg, BitTape& tape,
    const Grid& grid,
    SampleTrace<typename Grid::grid_point>* trace = nullptr) {
  cfg.validate();
  BigFloat a(0);
  BigFloat b(1);
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    std::uint64_t raw = tape.next_bits(cfg.chunk_bits);
    auto [na, nb] = bisect_step(a, b, chunk_to_index(raw, cfg.chunk_bits),
                                cfg.chunk_bits);
    a = na;
    b = nb;
    int prec = cfg.precision_at(k);
    Enclosure image = dist.interval_inv_cdf(a, b, prec);
    if (trace) trace->iterations.push_back({a, b, raw, prec, image});
    if (auto point = terminate_check(image, grid)) {
      if constexpr (std::is_same_v<typename Grid::grid_point, double>) {
        if (std::isinf(*point) &&
            cfg.overflow_mode == SamplerConfig::Overflow::error)
          throw SamplerOverflow();
      }
      if (trace) trace->output = point;
      return {point, k};
    }
  }
  if (trace) trace->output = std::nullopt;
  return {std::nullopt, cfg.max_iterations};
}

/// Convenience entry point: Laplace on the binary64 grid.
inline SampleResult<Binary64Grid> sample_laplace(
    const LaplaceParams& params, const SamplerConfig& cfg, BitTape& tape,
    const Binary64Grid& grid = Binary64Grid(),
    SampleTrace<double>* trace = nullptr) {
  LaplaceDistribution dist(params);
  return refine_sample(dist, cfg, tape, grid, trace);
}

// ---------------------------------------------------------------------------
// Trace serialization: line-oriented text, hex-dyadic endpoints, bit-exact
// round trip. The header pins the parameters needed to replay.

struct TracedRun {
  LaplaceParams params;
  SamplerConfig cfg;
  SampleTrace<double> trace;
};

inline void write_trace(std::ostream& os, const LaplaceParams& params,
                        const SamplerConfig& cfg,
                        const SampleTrace<double>& trace) {
  os << "laplace mu " << params.mu.to_hex_string() << " beta "
     << params.beta.to_hex_string() << " chunk_bits " << cfg.chunk_bits
     << " base_prec " << cfg.base_prec << " prec_step " << cfg.prec_step
     << " max_iterations " << cfg.max_iterations << '\n';
  for (const auto& it : trace.iterations) {
    os << "iter chunk " << it.chunk_raw << " a " << it.a.to_hex_string()
       << " b " << it.b.to_hex_string() << " prec " << it.prec << " s "
       << it.image.lo.to_hex_string() << " t " << it.image.hi.to_hex_string()
       << '\n';
  }
  if (trace.output)
    os << "out " << std::hex << to_bits(*trace.output) << std::dec << '\n';
  else
    os << "out bottom\n";
}

inline TracedRun read_trace(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("trace: missing header");
  std::istringstream hs(line);
  std::string tag, key;
  std::string mu_s, beta_s;
  SamplerConfig cfg;
  hs >> tag;
  if (tag != "laplace") throw std::runtime_error("trace: bad header");
  while (hs >> key) {
    if (key == "mu") hs >> mu_s;
    else if (key == "beta") hs >> beta_s;
    else if (key == "chunk_bits") hs >> cfg.chunk_bits;
    else if (key == "base_prec") hs >> cfg.base_prec;
    else if (key == "prec_step") hs >> cfg.prec_step;
    else if (key == "max_iterations") hs >> cfg.max_iterations;
    else throw std::runtime_error("trace: unknown header key " + key);
  }
  TracedRun run{LaplaceParams(BigFloat::from_hex_string(mu_s),
                              BigFloat::from_hex_string(beta_s)),
                cfg,
                {}};
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> tag;
    if (tag == "iter") {
      IterationRecord rec;
      std::string a_s, b_s, s_s, t_s;
      std::string k1, k2, k3, k4, k5, k6;
      ls >> k1 >> rec.chunk_raw >> k2 >> a_s >> k3 >> b_s >> k4 >> rec.prec >>
          k5 >> s_s >> k6 >> t_s;
      if (k1 != "chunk" || k2 != "a" || k3 != "b" || k4 != "prec" ||
          k5 != "s" || k6 != "t")
        throw std::runtime_error("trace: malformed iter line");
      rec.a = BigFloat::from_hex_string(a_s);
      rec.b = BigFloat::from_hex_string(b_s);
      rec.image = Enclosure(BigFloat::from_hex_string(s_s),
                            BigFloat::from_hex_string(t_s));
      run.trace.iterations.push_back(std::move(rec));
    } else if (tag == "out") {
      std::string v;
      ls >> v;
      if (v == "bottom") {
        run.trace.output = std::nullopt;
      } else {
        run.trace.output = from_bits(std::stoull(v, nullptr, 16));
      }
      break;
    } else {
      throw std::runtime_error("trace: unexpected line: " + line);
    }
  }
  return run;
}

/// Rebuild the exact tape a trace consumed.
inline BitTape tape_from_trace(const SamplerConfig& cfg,
                               const SampleTrace<double>& trace) {
  std::vector<bool> bits;
  bits.reserve(trace.iterations.size() * cfg.chunk_bits);
  for (const auto& it : trace.iterations)
    for (int i = cfg.chunk_bits - 1; i >= 0; --i)
      bits.push_back(((it.chunk_raw >> i) & 1) != 0);
  return BitTape::replay(std::move(bits));
}

}  // namespace refinedp

#endif  // REFINEDP_SAMPLER_HPP
