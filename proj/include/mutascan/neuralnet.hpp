#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mutascan {

enum class Activation { LogisticSigmoid };

/// f(u) = 1 / (1 + e^-u)
double sigmoid(double u) noexcept;
/// f'(u) = f(u) (1 - f(u))
double sigmoid_derivative(double u) noexcept;

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Fully connected feed-forward network.
///
/// weights[l] maps layer l to layer l + 1 and has shape
/// layer_sizes[l] x layer_sizes[l + 1]: entry (i, j) is the connection from
/// lower unit i to upper unit j. biases[l] belongs to layer l + 1.
struct Network {
  std::vector<std::size_t> layer_sizes;
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
  Activation activation = Activation::LogisticSigmoid;

  std::size_t input_size() const noexcept { return layer_sizes.front(); }
  std::size_t output_size() const noexcept { return layer_sizes.back(); }
  std::size_t parameter_count() const noexcept;

  friend bool operator==(const Network&, const Network&) = default;
};

/// Uniform [-init_range, init_range] parameters from a seeded generator.
/// Requires at least one hidden layer and every size >= 1 (BadShape).
Network init_network(std::span<const std::size_t> layer_sizes, std::uint64_t seed, double init_range);

struct ForwardPass {
  /// activations[0] is the input; activations[l] the output of layer l.
  std::vector<std::vector<double>> activations;
  /// net_inputs[l - 1] is the pre-activation of layer l.
  std::vector<std::vector<double>> net_inputs;

  const std::vector<double>& output() const { return activations.back(); }
};

/// Throws ShapeMismatch when |x| != input size.
ForwardPass forward(const Network& net, std::span<const double> x);

/// Parameter corrections with the same shapes as the network.
struct ParameterUpdate {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
};

/// Corrections for one training pair. Output deltas are
/// (t_k - y_k) f'(y_in_k); hidden deltas sum the deltas above through the
/// current (pre-update) weights and scale by f'(z_in_j). Every weight
/// correction is alpha * delta(upper) * activation(lower), every bias
/// correction alpha * delta.
ParameterUpdate backprop_deltas(const Network& net, std::span<const double> x, std::span<const double> t,
                                double alpha);

void apply_update(Network& net, const ParameterUpdate& update);

struct Sample {
  std::vector<double> input;
  std::vector<double> target;
};

struct TrainConfig {
  double learning_rate = 0.5;
  double mse_goal = 1e-7;
  std::size_t max_epochs = 500'000;
  std::uint64_t seed = 1;
  double init_range = 0.5;

  /// Throws InvalidArgument on non-positive rate/goal/range or zero epochs.
  void validate() const;
};

struct TrainReport {
  std::size_t epochs_run = 0;
  double final_mse = 0.0;
  bool goal_met = false;
  std::vector<double> mse_history;
  std::vector<std::size_t> layer_sizes;
  TrainConfig config;
};

/// Mean over samples of (1/m) sum_k (t_k - y_k)^2.
double mean_squared_error(const Network& net, std::span<const Sample> samples);

/// Sequential per-sample backpropagation in the given sample order. The MSE
/// of each epoch is measured after that epoch's updates; training stops once
/// it is <= cfg.mse_goal or after cfg.max_epochs epochs.
///
/// Errors: InvalidArgument (empty set / bad config), ShapeMismatch,
/// NonFiniteLoss.
TrainReport train(Network& net, std::span<const Sample> samples, const TrainConfig& cfg);

inline constexpr std::string_view kModelMagic = "mutascan-model";
inline constexpr std::string_view kModelVersion = "v1";

/// Text model: header line, layer sizes line, then every parameter on its own
/// line (per layer: weights row-major, then biases) with 17 significant digits.
std::string serialize_model(const Network& net);
/// Throws VersionMismatch or CorruptModel.
Network deserialize_model(std::string_view text);

void save_model(const Network& net, const std::string& path);
Network load_model(const std::string& path);

}  // namespace mutascan
