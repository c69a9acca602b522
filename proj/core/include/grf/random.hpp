#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace grf {

/// Stream of i.i.d. standard-normal draws. The base class counts every draw
/// handed out, so any stream doubles as an instrumented stream for the
/// draw-count checks.
class GaussianStream {
public:
  virtual ~GaussianStream() = default;

  double next() {
    ++count_;
    return draw();
  }

  std::uint64_t draws_consumed() const { return count_; }

private:
  virtual double draw() = 0;
  std::uint64_t count_ = 0;
};

/// Seedable stream: xoshiro256++ uniforms fed through a 256-layer ziggurat
/// rejection sampler. Bit-reproducible across platforms, unlike
/// std::normal_distribution. Substreams derived from (seed, substream) are
/// a pure function of both values, so batch runs are reproducible for any
/// worker count.
class Xoshiro256Stream final : public GaussianStream {
public:
  explicit Xoshiro256Stream(std::uint64_t seed, std::uint64_t substream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

private:
  double draw() override;

  std::uint64_t state_[4];
  std::uint64_t seed_;
};

/// Replays a fixed sequence; throws std::runtime_error on exhaustion.
class FixedStream final : public GaussianStream {
public:
  explicit FixedStream(std::vector<double> values) : values_(std::move(values)) {}

private:
  double draw() override {
    if (pos_ >= values_.size()) throw std::runtime_error("FixedStream: stream exhausted");
    return values_[pos_++];
  }

  std::vector<double> values_;
  std::size_t pos_ = 0;
};

/// Endless stream of one fixed value (e.g. 0 for linearity tests).
class ConstantStream final : public GaussianStream {
public:
  explicit ConstantStream(double value) : value_(value) {}

private:
  double draw() override { return value_; }
  double value_;
};

}  // namespace grf
