#include "mutascan/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mutascan/error.hpp"

namespace mutascan {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw Error(ErrorCode::ConfigError, "bad value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> parse_arch(std::string_view text) {
  std::vector<std::size_t> sizes;
  for (const std::string& item : split_commas(text)) {
    const auto s = parse_number<std::size_t>("arch", item);
    if (s == 0) throw Error(ErrorCode::ConfigError, "arch sizes must be >= 1");
    sizes.push_back(s);
  }
  if (sizes.size() < 3) throw Error(ErrorCode::ConfigError, "arch needs n,hidden...,m (at least 3 sizes)");
  return sizes;
}

std::vector<std::size_t> resolve_arch(const PipelineConfig& cfg, std::size_t inputs, std::size_t outputs) {
  if (!cfg.arch) {
    std::vector<std::size_t> sizes{inputs};
    sizes.insert(sizes.end(), default_hidden_layers().begin(), default_hidden_layers().end());
    sizes.push_back(outputs);
    return sizes;
  }
  const auto& arch = *cfg.arch;
  if (arch.front() != inputs || arch.back() != outputs) {
    throw Error(ErrorCode::ConfigError, "arch must start with " + std::to_string(inputs) +
                                            " inputs and end with " + std::to_string(outputs) + " outputs");
  }
  return arch;
}

FrameChoice parse_frame(std::string_view text) {
  if (text == "auto") return kAutoFrame;
  if (text == "0" || text == "1" || text == "2") return static_cast<std::size_t>(text[0] - '0');
  throw Error(ErrorCode::ConfigError, "frame must be 0, 1, 2 or auto (got '" + std::string(text) + "')");
}

std::string frame_to_string(FrameChoice frame) { return frame ? std::to_string(*frame) : "auto"; }

void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view value) {
  const auto as_int = [&] { return parse_number<int>(key, value); };
  const auto as_double = [&] { return parse_number<double>(key, value); };
  const auto as_size = [&] { return parse_number<std::size_t>(key, value); };

  if (key == "align.match") cfg.dna_scheme.match = as_int();
  else if (key == "align.mismatch") cfg.dna_scheme.mismatch = as_int();
  else if (key == "align.gap_open") cfg.dna_scheme.gap_open = as_int();
  else if (key == "align.gap_extend") cfg.dna_scheme.gap_extend = as_int();
  else if (key == "align.protein.match") cfg.protein_scheme.match = as_int();
  else if (key == "align.protein.mismatch") cfg.protein_scheme.mismatch = as_int();
  else if (key == "align.protein.gap_open") cfg.protein_scheme.gap_open = as_int();
  else if (key == "align.protein.gap_extend") cfg.protein_scheme.gap_extend = as_int();
  else if (key == "align.seed_k") cfg.seed_k = as_size();
  else if (key == "align.frame") cfg.frame = parse_frame(value);
  else if (key == "genes") {
    cfg.genes = split_commas(value);
    if (cfg.genes.empty()) throw Error(ErrorCode::ConfigError, "genes must list at least one gene");
  } else if (key == "predict.gene") cfg.gene = std::string(value);
  else if (key == "predict.threshold") cfg.threshold = as_double();
  else if (key == "train.arch") cfg.arch = parse_arch(value);
  else if (key == "train.lr") cfg.learning_rate = as_double();
  else if (key == "train.goal") cfg.mse_goal = as_double();
  else if (key == "train.max_epochs") cfg.max_epochs = as_size();
  else if (key == "train.init_range") cfg.init_range = as_double();
  else if (key == "train.negatives") cfg.negatives = as_size();
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "fetch.endpoint") cfg.endpoint = std::string(value);
  else if (key == "fetch.timeout") cfg.timeout_seconds = as_double();
  else throw Error(ErrorCode::ConfigError, "unknown config key '" + std::string(key) + "'");
}

void apply_config_text(PipelineConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "config line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

}  // namespace mutascan
