#ifndef REFINEDP_BIT_TAPE_HPP
#define REFINEDP_BIT_TAPE_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#if defined(__linux__)
#include <sys/random.h>
#endif

namespace refinedp {

struct TapeExhausted : std::runtime_error {
  TapeExhausted() : std::runtime_error("bit tape exhausted in replay mode") {}
};

/// A stream of uniform random bits driving the sampler.
///
/// Live mode draws from the operating system's cryptographic source.
/// Seeded mode is a deterministic generator for tests and reproducible
/// runs; it is not suitable for production privacy guarantees. Replay mode
/// consumes a fixed recorded sequence and errors on exhaustion.
/// With recording enabled, every consumed bit is kept in order, which is
/// what makes traces replayable.
class BitTape {
 public:
  enum class Mode { live, seeded, replay };

  static BitTape live() { return BitTape(Mode::live, 0, {}); }

  static BitTape seeded(std::uint64_t seed) {
    return BitTape(Mode::seeded, seed, {});
  }

  static BitTape replay(std::vector<bool> bits) {
    return BitTape(Mode::replay, 0, std::move(bits));
  }

  Mode mode() const { return mode_; }

  void set_recording(bool on) { recording_ = on; }
  const std::vector<bool>& consumed() const { return consumed_; }

  bool next_bit() {
    bool bit;
    if (mode_ == Mode::replay) {
      if (replay_pos_ >= replay_bits_.size()) throw TapeExhausted();
      bit = replay_bits_[replay_pos_++];
    } else {
      if (word_bits_left_ == 0) refill();
      bit = (word_ >> 63) != 0;
      word_ <<= 1;
      --word_bits_left_;
    }
    if (recording_) consumed_.push_back(bit);
    return bit;
  }

  /// n bits, MSB first, n in [1, 63].
  std::uint64_t next_bits(int n) {
    if (n < 1 || n > 63) throw std::invalid_argument("next_bits: n in [1,63]");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 1) | (next_bit() ? 1u : 0u);
    return v;
  }

  std::size_t bits_remaining() const {
    if (mode_ != Mode::replay) return static_cast<std::size_t>(-1);
    return replay_bits_.size() - replay_pos_;
  }

 private:
  BitTape(Mode mode, std::uint64_t seed, std::vector<bool> bits)
      : mode_(mode), replay_bits_(std::move(bits)), rng_(seed) {}

  void refill() {
    if (mode_ == Mode::seeded) {
      word_ = rng_();
    } else {
#if defined(__linux__)
      std::uint64_t w = 0;
      ssize_t got = getrandom(&w, sizeof(w), 0);
      if (got != static_cast<ssize_t>(sizeof(w)))
        throw std::runtime_error("getrandom failed");
      word_ = w;
#else
      std::random_device rd;
      word_ = (static_cast<std::uint64_t>(rd()) << 32) | rd();
#endif
    }
    word_bits_left_ = 64;
  }

  Mode mode_;
  std::vector<bool> replay_bits_;
  std::size_t replay_pos_ = 0;
  std::mt19937_64 rng_;
  std::uint64_t word_ = 0;
  int word_bits_left_ = 0;
  bool recording_ = false;
  std::vector<bool> consumed_;
};

}  // namespace refinedp

#endif  // REFINEDP_BIT_TAPE_HPP
