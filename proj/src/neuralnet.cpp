#include "mutascan/neuralnet.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mutascan/error.hpp"
#include "mutascan/random.hpp"

namespace mutascan {

double sigmoid(double u) noexcept { return 1.0 / (1.0 + std::exp(-u)); }

double sigmoid_derivative(double u) noexcept {
  const double f = sigmoid(u);
  return f * (1.0 - f);
}

std::size_t Network::parameter_count() const noexcept {
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) count += (layer_sizes[l] + 1) * layer_sizes[l + 1];
  return count;
}

Network init_network(std::span<const std::size_t> layer_sizes, std::uint64_t seed, double init_range) {
  if (layer_sizes.size() < 3) {
    throw Error(ErrorCode::BadShape, "network needs input, at least one hidden, and output layers");
  }
  for (std::size_t s : layer_sizes) {
    if (s == 0) throw Error(ErrorCode::BadShape, "layer sizes must be >= 1");
  }
  if (!(init_range >= 0.0) || !std::isfinite(init_range)) {
    throw Error(ErrorCode::InvalidArgument, "init range must be finite and >= 0");
  }

  Rng rng(seed);
  Network net;
  net.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    Matrix w(layer_sizes[l], layer_sizes[l + 1]);
    for (double& v : w.data()) v = rng.uniform(-init_range, init_range);
    std::vector<double> b(layer_sizes[l + 1]);
    for (double& v : b) v = rng.uniform(-init_range, init_range);
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

namespace {

void check_input(const Network& net, std::span<const double> x) {
  if (x.size() != net.input_size()) {
    throw Error(ErrorCode::ShapeMismatch, "input has " + std::to_string(x.size()) + " values, network expects " +
                                              std::to_string(net.input_size()));
  }
}

void check_target(const Network& net, std::span<const double> t) {
  if (t.size() != net.output_size()) {
    throw Error(ErrorCode::ShapeMismatch, "target has " + std::to_string(t.size()) + " values, network emits " +
                                              std::to_string(net.output_size()));
  }
}

ForwardPass make_pass(const Network& net) {
  ForwardPass pass;
  for (std::size_t s : net.layer_sizes) pass.activations.emplace_back(s, 0.0);
  for (std::size_t l = 1; l < net.layer_sizes.size(); ++l) pass.net_inputs.emplace_back(net.layer_sizes[l], 0.0);
  return pass;
}

// Net input of each upper unit is its bias plus the weighted lower
// activations, summed in ascending lower-unit order.
void forward_into(const Network& net, std::span<const double> x, ForwardPass& pass) {
  std::copy(x.begin(), x.end(), pass.activations[0].begin());
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    const Matrix& w = net.weights[l];
    const std::vector<double>& below = pass.activations[l];
    std::vector<double>& sum = pass.net_inputs[l];
    std::copy(net.biases[l].begin(), net.biases[l].end(), sum.begin());
    for (std::size_t i = 0; i < w.rows(); ++i) {
      const double xi = below[i];
      const auto wi = w.row(i);
      for (std::size_t j = 0; j < wi.size(); ++j) sum[j] += xi * wi[j];
    }
    std::vector<double>& out = pass.activations[l + 1];
    for (std::size_t j = 0; j < sum.size(); ++j) out[j] = sigmoid(sum[j]);
  }
}

// Error terms per non-input layer, top layer last.
void compute_deltas(const Network& net, const ForwardPass& pass, std::span<const double> t,
                    std::vector<std::vector<double>>& deltas) {
  const std::size_t top = net.weights.size() - 1;
  const auto fprime = [](double activation) { return activation * (1.0 - activation); };

  const std::vector<double>& y = pass.activations.back();
  for (std::size_t k = 0; k < y.size(); ++k) deltas[top][k] = (t[k] - y[k]) * fprime(y[k]);

  for (std::size_t l = top; l-- > 0;) {
    // Layer l + 1 is hidden; its outgoing weights are weights[l + 1].
    const Matrix& w_up = net.weights[l + 1];
    const std::vector<double>& delta_up = deltas[l + 1];
    const std::vector<double>& z = pass.activations[l + 1];
    for (std::size_t j = 0; j < w_up.rows(); ++j) {
      const auto wj = w_up.row(j);
      double delta_in = 0.0;
      for (std::size_t k = 0; k < wj.size(); ++k) delta_in += delta_up[k] * wj[k];
      deltas[l][j] = delta_in * fprime(z[j]);
    }
  }
}

}  // namespace

ForwardPass forward(const Network& net, std::span<const double> x) {
  check_input(net, x);
  ForwardPass pass = make_pass(net);
  forward_into(net, x, pass);
  return pass;
}

ParameterUpdate backprop_deltas(const Network& net, std::span<const double> x, std::span<const double> t,
                                double alpha) {
  check_input(net, x);
  check_target(net, t);
  ForwardPass pass = make_pass(net);
  forward_into(net, x, pass);

  std::vector<std::vector<double>> deltas;
  for (const auto& b : net.biases) deltas.emplace_back(b.size(), 0.0);
  compute_deltas(net, pass, t, deltas);

  ParameterUpdate update;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    const Matrix& w = net.weights[l];
    Matrix dw(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i) {
      for (std::size_t j = 0; j < w.cols(); ++j) dw(i, j) = alpha * deltas[l][j] * pass.activations[l][i];
    }
    std::vector<double> db(deltas[l].size());
    for (std::size_t j = 0; j < db.size(); ++j) db[j] = alpha * deltas[l][j];
    update.weights.push_back(std::move(dw));
    update.biases.push_back(std::move(db));
  }
  return update;
}

void apply_update(Network& net, const ParameterUpdate& update) {
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    auto w = net.weights[l].data();
    const auto dw = update.weights[l].data();
    for (std::size_t p = 0; p < w.size(); ++p) w[p] += dw[p];
    for (std::size_t j = 0; j < net.biases[l].size(); ++j) net.biases[l][j] += update.biases[l][j];
  }
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::InvalidArgument, "learning rate must be positive");
  }
  if (!(mse_goal > 0.0) || !std::isfinite(mse_goal)) {
    throw Error(ErrorCode::InvalidArgument, "mse goal must be positive and finite");
  }
  if (max_epochs == 0) throw Error(ErrorCode::InvalidArgument, "max epochs must be >= 1");
  if (!(init_range >= 0.0) || !std::isfinite(init_range)) {
    throw Error(ErrorCode::InvalidArgument, "init range must be finite and >= 0");
  }
}

double mean_squared_error(const Network& net, std::span<const Sample> samples) {
  if (samples.empty()) return 0.0;
  ForwardPass pass = make_pass(net);
  double total = 0.0;
  for (const Sample& s : samples) {
    check_input(net, s.input);
    check_target(net, s.target);
    forward_into(net, s.input, pass);
    const std::vector<double>& y = pass.output();
    double sq = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) sq += (s.target[k] - y[k]) * (s.target[k] - y[k]);
    total += sq / static_cast<double>(y.size());
  }
  return total / static_cast<double>(samples.size());
}

TrainReport train(Network& net, std::span<const Sample> samples, const TrainConfig& cfg) {
  cfg.validate();
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "training set is empty");
  for (const Sample& s : samples) {
    check_input(net, s.input);
    check_target(net, s.target);
  }

  TrainReport report;
  report.layer_sizes = net.layer_sizes;
  report.config = cfg;

  ForwardPass pass = make_pass(net);
  std::vector<std::vector<double>> deltas;
  for (const auto& b : net.biases) deltas.emplace_back(b.size(), 0.0);
  const double alpha = cfg.learning_rate;

  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    for (const Sample& s : samples) {
      forward_into(net, s.input, pass);
      // All deltas use the pre-update weights; parameters change afterwards.
      compute_deltas(net, pass, s.target, deltas);
      for (std::size_t l = 0; l < net.weights.size(); ++l) {
        Matrix& w = net.weights[l];
        const std::vector<double>& below = pass.activations[l];
        const std::vector<double>& delta = deltas[l];
        for (std::size_t i = 0; i < w.rows(); ++i) {
          const double xi = below[i];
          auto wi = w.row(i);
          for (std::size_t j = 0; j < wi.size(); ++j) wi[j] += alpha * delta[j] * xi;
        }
        for (std::size_t j = 0; j < delta.size(); ++j) net.biases[l][j] += alpha * delta[j];
      }
    }

    const double mse = mean_squared_error(net, samples);
    report.mse_history.push_back(mse);
    report.epochs_run = epoch + 1;
    report.final_mse = mse;
    if (!std::isfinite(mse)) {
      throw Error(ErrorCode::NonFiniteLoss, "MSE became non-finite at epoch " + std::to_string(epoch + 1));
    }
    if (mse <= cfg.mse_goal) {
      report.goal_met = true;
      break;
    }
  }
  return report;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

std::string serialize_model(const Network& net) {
  std::string out;
  out += kModelMagic;
  out += ' ';
  out += kModelVersion;
  out += " logistic\n";
  for (std::size_t l = 0; l < net.layer_sizes.size(); ++l) {
    if (l) out += ' ';
    out += std::to_string(net.layer_sizes[l]);
  }
  out += '\n';
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    for (double v : net.weights[l].data()) {
      append_double(out, v);
      out += '\n';
    }
    for (double v : net.biases[l]) {
      append_double(out, v);
      out += '\n';
    }
  }
  return out;
}

Network deserialize_model(std::string_view text) {
  const auto corrupt = [](const std::string& why) { return Error(ErrorCode::CorruptModel, "model file: " + why); };
  std::size_t cursor = 0;
  const auto next_line = [&](std::string_view& line) {
    if (cursor >= text.size()) return false;
    const auto nl = text.find('\n', cursor);
    line = text.substr(cursor, nl == std::string_view::npos ? std::string_view::npos : nl - cursor);
    cursor = nl == std::string_view::npos ? text.size() : nl + 1;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw corrupt("empty");
  std::istringstream header{std::string(line)};
  std::string magic, version, activation;
  header >> magic >> version >> activation;
  if (magic != kModelMagic) throw corrupt("missing '" + std::string(kModelMagic) + "' header");
  if (version != kModelVersion) {
    throw Error(ErrorCode::VersionMismatch, "model version '" + version + "', expected '" +
                                                std::string(kModelVersion) + "'");
  }
  if (activation != "logistic") throw corrupt("unknown activation '" + activation + "'");

  if (!next_line(line)) throw corrupt("missing layer sizes");
  std::vector<std::size_t> sizes;
  {
    std::istringstream in{std::string(line)};
    std::size_t s;
    while (in >> s) sizes.push_back(s);
    if (!in.eof()) throw corrupt("bad layer sizes line");
  }
  Network net;
  try {
    net = init_network(sizes, 0, 0.0);
  } catch (const Error& e) {
    throw corrupt(e.what());
  }

  const auto read_value = [&]() {
    std::string_view value;
    if (!next_line(value)) throw corrupt("truncated parameter list");
    double v = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || end != value.data() + value.size() || !std::isfinite(v)) {
      throw corrupt("bad parameter '" + std::string(value) + "'");
    }
    return v;
  };
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    for (double& v : net.weights[l].data()) v = read_value();
    for (double& v : net.biases[l]) v = read_value();
  }
  while (next_line(line)) {
    if (!line.empty()) throw corrupt("trailing data after parameters");
  }
  return net;
}

void save_model(const Network& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << serialize_model(net);
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

Network load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace mutascan
