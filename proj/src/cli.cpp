#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mutascan/error.hpp"
#include "mutascan/pipeline.hpp"
#include "mutascan/report.hpp"
#include "mutascan/seqio.hpp"
#include "mutascan/translate.hpp"

namespace mutascan {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  file << content;
  if (!file) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

Sequence first_record(const std::string& path) { return read_fasta_file(path).front(); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

// Options shared by several subcommands, applied over the config file.
struct Overrides {
  std::optional<std::string> frame;
  std::optional<std::string> genes;
  std::optional<std::uint64_t> seed;
};

PipelineConfig load_config(const std::string& config_path, const Overrides& o) {
  PipelineConfig cfg;
  if (!config_path.empty()) apply_config_file(cfg, config_path);
  if (o.frame) cfg.frame = parse_frame(*o.frame);
  if (o.genes) apply_setting(cfg, "genes", *o.genes);
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

std::map<std::string, Sequence> load_references(const std::vector<std::string>& paths) {
  std::map<std::string, Sequence> refs;
  for (const std::string& path : paths) {
    for (Sequence& s : read_fasta_file(path)) {
      const std::string id = s.id;
      if (!refs.emplace(id, std::move(s)).second) {
        throw Error(ErrorCode::InvalidArgument, "reference '" + id + "' given more than once");
      }
    }
  }
  return refs;
}

int cmd_fetch(const PipelineConfig& base, const std::string& accession, const std::optional<std::string>& endpoint,
              const std::optional<double>& timeout, const std::string& out_path, std::ostream& out) {
  PipelineConfig cfg = base;
  if (endpoint) cfg.endpoint = *endpoint;
  if (cfg.endpoint.empty()) {
    if (const char* env = std::getenv("MUTASCAN_ENDPOINT")) cfg.endpoint = env;
  }
  if (cfg.endpoint.empty()) {
    throw UsageError("no endpoint: pass --endpoint, set fetch.endpoint, or export MUTASCAN_ENDPOINT");
  }
  if (timeout) cfg.timeout_seconds = *timeout;
  if (!(cfg.timeout_seconds > 0)) throw UsageError("--timeout must be positive");
  const auto ms = std::chrono::milliseconds(static_cast<long long>(cfg.timeout_seconds * 1000.0));
  const Sequence seq = fetch_reference(accession, cfg.endpoint, ms);
  write_output(out_path, write_fasta({seq}), out);
  return 0;
}

int cmd_align(const PipelineConfig& cfg, const std::string& a_path, const std::string& b_path,
              const std::string& format, const std::string& out_path, std::ostream& out) {
  const Sequence a = first_record(a_path);
  const Sequence b = first_record(b_path);
  const ScoringScheme& scheme = a.alphabet == Alphabet::DNA ? cfg.dna_scheme : cfg.protein_scheme;
  const Alignment al = global_align(a, b, scheme);
  std::string text;
  if (format == "json") {
    nlohmann::json j = al;
    j["a_id"] = a.id;
    j["b_id"] = b.id;
    j["identity"] = percent_identity(al);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream s;
    s << "# " << a.id << " vs " << b.id << "  score " << al.score << "  identity " << percent_identity(al)
      << "  scheme " << scheme.match << "/" << scheme.mismatch << "/" << scheme.gap_open << "/"
      << scheme.gap_extend << "\n";
    s << format_alignment(al);
    text = s.str();
  }
  write_output(out_path, text, out);
  return 0;
}

int cmd_translate(const std::string& in_path, const std::string& frame_text, const std::string& policy_text,
                  const std::string& out_path, std::ostream& out) {
  const FrameChoice frame = parse_frame(frame_text);
  const StopPolicy policy = policy_text == "through" ? StopPolicy::TranslateThrough : StopPolicy::TruncateAtStop;
  std::vector<Sequence> proteins;
  for (const Sequence& dna : read_fasta_file(in_path)) {
    if (frame) {
      proteins.push_back(translate(dna, *frame, policy));
    } else {
      const OrfResult orf = best_orf_frame(dna);
      Sequence protein = orf.protein;
      protein.residues = translate_residues(dna.residues, orf.start, policy);
      proteins.push_back(std::move(protein));
    }
  }
  write_output(out_path, write_fasta(proteins), out);
  return 0;
}

int cmd_call(const PipelineConfig& cfg, const std::string& ref_path, const std::string& patient_path,
             const std::string& format, const std::string& out_path, std::ostream& out) {
  const Sequence ref = first_record(ref_path);
  const Sequence patient = first_record(patient_path);
  const CandidateVerdict v =
      assess_candidate(ref, patient, cfg.frame, cfg.dna_scheme, cfg.protein_scheme, cfg.seed_k);
  std::string text;
  if (format == "json") {
    text = nlohmann::json(v).dump(2) + "\n";
  } else {
    std::ostringstream s;
    for (const Variant& var : v.dna_variants) s << "dna\t" << var.notation() << "\n";
    for (const Variant& var : v.protein_variants) s << "protein\t" << var.notation() << "\n";
    s << "rationale\t" << to_string(v.rationale) << "\n";
    s << "malignant_candidate\t" << (v.malignant_candidate ? "true" : "false") << "\n";
    text = s.str();
  }
  write_output(out_path, text, out);
  return 0;
}

struct TrainArgs {
  std::string catalog;
  std::vector<std::string> references;
  std::optional<std::size_t> negatives;
  std::optional<std::string> arch;
  std::optional<double> lr;
  std::optional<double> goal;
  std::optional<std::size_t> max_epochs;
  std::optional<double> init_range;
  std::string out;
  std::string history;
  std::string training_set;
};

int cmd_train(PipelineConfig cfg, const TrainArgs& args, std::ostream& out) {
  if (args.negatives) cfg.negatives = *args.negatives;
  if (args.arch) cfg.arch = parse_arch(*args.arch);
  if (args.lr) cfg.learning_rate = *args.lr;
  if (args.goal) cfg.mse_goal = *args.goal;
  if (args.max_epochs) cfg.max_epochs = *args.max_epochs;
  if (args.init_range) cfg.init_range = *args.init_range;

  const auto references = load_references(args.references);
  const auto catalog = load_catalog_file(args.catalog, cfg.genes);
  const TrainingOutcome outcome = train_classifier(cfg, catalog, references);
  const TrainReport& report = outcome.report;
  if (!args.training_set.empty()) {
    write_output(args.training_set, nlohmann::json(outcome.examples).dump(2) + "\n", out);
  }
  save_model(outcome.model, args.out);

  if (!args.history.empty()) {
    std::string csv = "epoch,mse\n";
    for (std::size_t e = 0; e < report.mse_history.size(); ++e) {
      csv += std::to_string(e + 1) + "," + format_double(report.mse_history[e]) + "\n";
    }
    write_output(args.history, csv, out);
  }

  std::string shape;
  for (std::size_t s : report.layer_sizes) shape += (shape.empty() ? "" : ",") + std::to_string(s);
  out << "training set: " << catalog.size() << " positives, " << outcome.examples.size() - catalog.size() << " negatives\n";
  out << "architecture: " << shape << "  lr " << cfg.learning_rate << "  seed " << cfg.seed << "\n";
  out << "epochs: " << report.epochs_run << "  final MSE: " << format_double(report.final_mse) << "  goal "
      << cfg.mse_goal << (report.goal_met ? " met" : " NOT met") << "\n";
  out << "model written to " << args.out << "\n";
  return 0;
}

struct PredictArgs {
  std::string ref;
  std::string patient;
  std::string model;
  std::string catalog;
  std::optional<std::string> gene;
  std::optional<double> threshold;
  std::string out;
};

int cmd_predict(PipelineConfig cfg, const PredictArgs& args, std::ostream& out) {
  if (args.gene) cfg.gene = *args.gene;
  if (args.threshold) cfg.threshold = *args.threshold;
  cfg.files = {args.ref, args.patient, args.model, args.catalog};

  const Sequence ref = first_record(args.ref);
  const Sequence patient = first_record(args.patient);
  const Network model = load_model(args.model);
  const auto catalog = load_catalog_file(args.catalog, cfg.genes);
  const RunReport report = predict(ref, patient, model, catalog, cfg);
  if (!args.out.empty()) write_output(args.out, nlohmann::json(report).dump(2) + "\n", out);
  out << render_summary(report);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mutascan: reference-vs-patient mutation screening with a backpropagation classifier"};
  app.name("mutascan");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  Overrides overrides;
  app.add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", overrides.seed, "seed for every random choice");
  app.add_option("--genes", overrides.genes, "comma-separated gene set (default BRCA1,BRCA2)");

  auto* fetch = app.add_subcommand("fetch", "download a reference FASTA record");
  std::string accession, fetch_out;
  std::optional<std::string> endpoint;
  std::optional<double> timeout;
  fetch->add_option("--accession", accession, "accession token")->required();
  fetch->add_option("--endpoint", endpoint, "URL template containing {accession}");
  fetch->add_option("--timeout", timeout, "timeout in seconds");
  fetch->add_option("--out", fetch_out, "output FASTA (default stdout)");

  auto* align = app.add_subcommand("align", "global pairwise alignment of two sequences");
  std::string a_path, b_path, align_format = "text", align_out;
  align->add_option("--a", a_path, "first FASTA file")->required()->check(CLI::ExistingFile);
  align->add_option("--b", b_path, "second FASTA file")->required()->check(CLI::ExistingFile);
  align->add_option("--format", align_format)->check(CLI::IsMember({"text", "json"}));
  align->add_option("--out", align_out, "output file (default stdout)");

  auto* translate_cmd = app.add_subcommand("translate", "translate DNA records to protein");
  std::string tr_in, tr_frame = "auto", tr_policy = "truncate", tr_out;
  translate_cmd->add_option("--in", tr_in, "DNA FASTA file")->required()->check(CLI::ExistingFile);
  translate_cmd->add_option("--frame", tr_frame)->check(CLI::IsMember({"0", "1", "2", "auto"}));
  translate_cmd->add_option("--stop-policy", tr_policy)->check(CLI::IsMember({"truncate", "through"}));
  translate_cmd->add_option("--out", tr_out, "output FASTA (default stdout)");

  auto* call = app.add_subcommand("call", "call DNA and protein variants of a patient gene");
  std::string call_ref, call_patient, call_format = "text", call_out;
  call->add_option("--ref", call_ref, "reference FASTA")->required()->check(CLI::ExistingFile);
  call->add_option("--patient", call_patient, "patient FASTA")->required()->check(CLI::ExistingFile);
  call->add_option("--frame", overrides.frame)->check(CLI::IsMember({"0", "1", "2", "auto"}));
  call->add_option("--format", call_format)->check(CLI::IsMember({"text", "json"}));
  call->add_option("--out", call_out, "output file (default stdout)");

  auto* train_cmd = app.add_subcommand("train", "train the classifier on a mutation catalog");
  TrainArgs targs;
  train_cmd->add_option("--catalog", targs.catalog, "catalog TSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--references", targs.references, "FASTA files whose record ids name genes")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--negatives", targs.negatives, "benign examples per catalog entry");
  train_cmd->add_option("--arch", targs.arch, "layer sizes n,h1,h2,m");
  train_cmd->add_option("--lr", targs.lr, "learning rate");
  train_cmd->add_option("--goal", targs.goal, "MSE goal");
  train_cmd->add_option("--max-epochs", targs.max_epochs, "epoch limit");
  train_cmd->add_option("--init-range", targs.init_range, "uniform init half-width");
  train_cmd->add_option("--out", targs.out, "model file")->required();
  train_cmd->add_option("--history", targs.history, "per-epoch MSE CSV");
  train_cmd->add_option("--training-set", targs.training_set, "dump the training set as JSON");

  auto* predict_cmd = app.add_subcommand("predict", "screen a patient gene and classify its mutations");
  PredictArgs pargs;
  predict_cmd->add_option("--ref", pargs.ref, "reference FASTA")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--patient", pargs.patient, "patient FASTA")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--model", pargs.model, "model file")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--catalog", pargs.catalog, "catalog TSV")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--gene", pargs.gene, "gene under test (default: reference id)");
  predict_cmd->add_option("--threshold", pargs.threshold, "network score threshold");
  predict_cmd->add_option("--frame", overrides.frame)->check(CLI::IsMember({"0", "1", "2", "auto"}));
  predict_cmd->add_option("--out", pargs.out, "RunReport JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << one_line(e.what()) << "\n";
    return 2;
  }

  try {
    const PipelineConfig cfg = load_config(config_path, overrides);
    if (*fetch) return cmd_fetch(cfg, accession, endpoint, timeout, fetch_out, out);
    if (*align) return cmd_align(cfg, a_path, b_path, align_format, align_out, out);
    if (*translate_cmd) return cmd_translate(tr_in, tr_frame, tr_policy, tr_out, out);
    if (*call) return cmd_call(cfg, call_ref, call_patient, call_format, call_out, out);
    if (*train_cmd) return cmd_train(cfg, targs, out);
    if (*predict_cmd) return cmd_predict(cfg, pargs, out);
  } catch (const UsageError& e) {
    err << "usage error: " << one_line(e.what()) << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << one_line(e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: Internal: " << one_line(e.what()) << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace mutascan
