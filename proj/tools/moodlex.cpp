// moodlex: induce emotion lexica from vote-annotated corpora and evaluate
// them (averaged-score correlation, CV baselines, embedding expansion).
//
// Every command is a pure function of its inputs and flags: identical
// configs produce byte-identical outputs, whatever --threads says.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moodlex/corpus.hpp"
#include "moodlex/embed.hpp"
#include "moodlex/induction.hpp"
#include "moodlex/regress.hpp"
#include "moodlex/scoring.hpp"
#include "moodlex/textproc.hpp"
#include "moodlex/util.hpp"

namespace {

using namespace moodlex;
using json = nlohmann::ordered_json;
using ConfigEcho = std::map<std::string, std::string>;

constexpr int kExitInput = 2;    // bad flags or malformed input files
constexpr int kExitCompute = 3;  // valid inputs with no defined result

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t pos = csv.find(',', start);
    if (pos == std::string::npos) {
      if (start < csv.size()) out.push_back(csv.substr(start));
      break;
    }
    if (pos > start) out.push_back(csv.substr(start, pos - start));
    start = pos + 1;
  }
  if (out.empty()) throw InputError("empty list '" + csv + "'");
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& csv, Parse parse) {
  std::vector<T> out;
  for (const auto& item : split_list(csv)) out.push_back(parse(item));
  return out;
}

long long parse_ll(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InputError("not an integer: '" + s + "'");
  }
}

double parse_real(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'");
  }
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "filtered") return true;
  if (s == "false" || s == "0" || s == "all") return false;
  throw InputError("not a boolean: '" + s + "'");
}

Corpus load_corpus_arg(const std::string& path, const std::string& format) {
  return load_corpus(path, corpus_format_from_string(format, path));
}

// Lexicon rep wins unless the flag overrides it.
WordRep resolve_rep(const std::string& flag, const Lexicon& lexicon) {
  return flag.empty() ? lexicon.rep : word_rep_from_string(flag);
}

std::string json_config_line(const ConfigEcho& config) {
  json j;
  json c = json::object();
  for (const auto& [key, value] : config) c[key] = value;
  j["config"] = std::move(c);
  return j.dump() + "\n";
}

std::string tsv_config_lines(const ConfigEcho& config) {
  std::ostringstream out;
  for (const auto& [key, value] : config)
    out << "# " << key << '\t' << value << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Shared option state
// ---------------------------------------------------------------------------

struct CommonArgs {
  std::string corpus_path;
  std::string corpus_format = "auto";
  std::string test_path;
  std::string test_format = "auto";
  std::string lexicon_path;
  std::string rep;
  long long cutoff = 1;
  bool filter = false;
  double holdout = 0.0;
  std::uint64_t seed = 0;
  int k = 10;
  double ridge = 1e-6;
  std::string out_path;
  std::string format = "tsv";
  int threads = 1;
};

void check_report_format(const std::string& format) {
  if (format != "tsv" && format != "jsonl")
    throw InputError("unknown report format '" + format + "'");
}

// Resolves the test corpus: explicit --test wins; otherwise a seeded holdout
// split of the training corpus. Returns (train, test).
std::pair<Corpus, Corpus> resolve_split(const CommonArgs& args,
                                        const Corpus& corpus,
                                        bool seed_given) {
  if (!args.test_path.empty() && args.holdout > 0.0)
    throw InputError("--test and --holdout are mutually exclusive");
  if (!args.test_path.empty())
    return {corpus, load_corpus_arg(args.test_path, args.test_format)};
  if (args.holdout > 0.0) {
    if (!seed_given) throw InputError("--holdout requires --seed");
    return split_holdout(corpus, args.holdout, args.seed);
  }
  throw InputError("need either --test or --holdout");
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void cmd_build(const CommonArgs& args) {
  Corpus corpus = load_corpus_arg(args.corpus_path, args.corpus_format);
  WordRep rep = word_rep_from_string(args.rep);
  Lexicon lex = build_lexicon(corpus, rep, args.cutoff, args.filter,
                              args.threads);
  lex.provenance.seed = args.seed;
  save_lexicon(lex, args.out_path);
}

// Thread count is deliberately absent everywhere: results are independent
// of it, and reports must stay byte-identical when it changes.
ConfigEcho eval_config(const CommonArgs& args, WordRep rep) {
  ConfigEcho config;
  config["command"] = "eval";
  config["lexicon"] = args.lexicon_path;
  config["test"] = args.test_path;
  config["rep"] = to_string(rep);
  return config;
}

void cmd_eval(const CommonArgs& args) {
  check_report_format(args.format);
  Lexicon lex = load_lexicon(args.lexicon_path);
  Corpus test = load_corpus_arg(args.test_path, args.test_format);
  WordRep rep = resolve_rep(args.rep, lex);
  EvalReport report = evaluate(lex, test, rep, args.threads);
  report.config = eval_config(args, rep);
  write_output(args.out_path, args.format == "tsv" ? report_to_tsv(report)
                                                   : report_to_jsonl(report));
}

void cmd_score(const CommonArgs& args) {
  check_report_format(args.format);
  Lexicon lex = load_lexicon(args.lexicon_path);
  Corpus input = load_corpus_arg(args.corpus_path, args.corpus_format);
  if (!(lex.space == input.space))
    throw InputError("lexicon and input corpus emotion spaces differ");
  WordRep rep = resolve_rep(args.rep, lex);

  std::size_t n = input.documents.size();
  std::vector<ScoredText> scored(n);
  parallel_for(n, args.threads, [&](std::size_t d) {
    scored[d] = score_text(lex, term_stream(input.documents[d], rep));
  });

  ConfigEcho config;
  config["command"] = "score";
  config["lexicon"] = args.lexicon_path;
  config["input"] = args.corpus_path;
  config["rep"] = to_string(rep);

  std::ostringstream out;
  if (args.format == "tsv") {
    out << tsv_config_lines(config);
    out << "id\tcovered\ttotal";
    for (const auto& label : lex.space.labels()) out << '\t' << label;
    out << '\n';
    for (std::size_t d = 0; d < n; ++d) {
      out << input.documents[d].id << '\t' << scored[d].covered << '\t'
          << scored[d].total;
      if (scored[d].scores) {
        for (double v : *scored[d].scores) out << '\t' << fmt_fixed(v);
      } else {
        out << "\tno-coverage";
      }
      out << '\n';
    }
  } else {
    out << json_config_line(config);
    for (std::size_t d = 0; d < n; ++d) {
      json j;
      j["id"] = input.documents[d].id;
      j["covered"] = scored[d].covered;
      j["total"] = scored[d].total;
      if (scored[d].scores) {
        json values = json::array();
        for (double v : *scored[d].scores)
          values.push_back(std::round(v * 1e6) / 1e6);
        j["scores"] = std::move(values);
      } else {
        j["scores"] = nullptr;
      }
      out << j.dump() << '\n';
    }
  }
  write_output(args.out_path, out.str());
}

void cmd_curve(const CommonArgs& args, const std::string& sizes_csv,
               bool seed_given) {
  check_report_format(args.format);
  Corpus corpus = load_corpus_arg(args.corpus_path, args.corpus_format);
  auto [train, test] = resolve_split(args, corpus, seed_given);
  if (args.filter) train = filter_untagged(train);
  WordRep rep = word_rep_from_string(args.rep);
  auto sizes = parse_list<std::size_t>(sizes_csv, [](const std::string& s) {
    long long v = parse_ll(s);
    if (v <= 0) throw InputError("sizes must be positive");
    return static_cast<std::size_t>(v);
  });

  auto points = learning_curve(train, test, rep, sizes, args.cutoff,
                               args.seed, args.threads);

  ConfigEcho config;
  config["command"] = "curve";
  config["corpus"] = args.corpus_path;
  config["test"] = args.test_path;
  config["holdout"] = fmt_fixed(args.holdout);
  config["rep"] = to_string(rep);
  config["cutoff"] = std::to_string(args.cutoff);
  config["filter"] = args.filter ? "true" : "false";
  config["sizes"] = sizes_csv;
  config["seed"] = std::to_string(args.seed);

  std::ostringstream out;
  if (args.format == "tsv") {
    out << tsv_config_lines(config);
    out << "size\taverage_r\n";
    for (const auto& p : points)
      out << p.size << '\t' << fmt_fixed(p.average_r) << '\n';
  } else {
    out << json_config_line(config);
    for (const auto& p : points) {
      json j;
      j["size"] = p.size;
      j["average_r"] = std::round(p.average_r * 1e6) / 1e6;
      out << j.dump() << '\n';
    }
  }
  write_output(args.out_path, out.str());
}

void cmd_sweep(const CommonArgs& args, const std::string& reps_csv,
               const std::string& cutoffs_csv, const std::string& filters_csv,
               bool seed_given) {
  check_report_format(args.format);
  Corpus corpus = load_corpus_arg(args.corpus_path, args.corpus_format);
  auto [train, test] = resolve_split(args, corpus, seed_given);
  auto reps = parse_list<WordRep>(reps_csv, [](const std::string& s) {
    return word_rep_from_string(s);
  });
  auto cutoffs = parse_list<long long>(cutoffs_csv, parse_ll);
  std::vector<bool> filters;
  for (const auto& item : split_list(filters_csv))
    filters.push_back(parse_bool(item));

  auto grid = sweep(train, test, reps, cutoffs, filters, args.threads);

  ConfigEcho config;
  config["command"] = "sweep";
  config["corpus"] = args.corpus_path;
  config["test"] = args.test_path;
  config["holdout"] = fmt_fixed(args.holdout);
  config["reps"] = reps_csv;
  config["cutoffs"] = cutoffs_csv;
  config["filters"] = filters_csv;
  config["seed"] = std::to_string(args.seed);

  std::ostringstream out;
  if (args.format == "tsv") {
    out << tsv_config_lines(config);
    out << "rep\tcutoff\tfiltered\tlexicon_size\taverage_r\tmean_coverage\t"
           "documents_used\n";
    for (const auto& cell : grid) {
      out << to_string(cell.rep) << '\t' << cell.cutoff << '\t'
          << (cell.filtered ? "true" : "false") << '\t' << cell.lexicon_size
          << '\t'
          << (cell.report.average ? fmt_fixed(*cell.report.average)
                                  : "undefined")
          << '\t' << fmt_fixed(cell.report.mean_coverage) << '\t'
          << cell.report.documents_used << '\n';
    }
  } else {
    out << json_config_line(config);
    for (const auto& cell : grid) {
      json j;
      j["rep"] = to_string(cell.rep);
      j["cutoff"] = cell.cutoff;
      j["filtered"] = cell.filtered;
      j["lexicon_size"] = cell.lexicon_size;
      json per = json::object();
      for (const auto& ec : cell.report.per_emotion) {
        if (ec.r) {
          per[ec.label] = std::round(*ec.r * 1e6) / 1e6;
        } else {
          per[ec.label] = nullptr;
        }
      }
      j["pearson_r"] = std::move(per);
      if (cell.report.average) {
        j["average"] = std::round(*cell.report.average * 1e6) / 1e6;
      } else {
        j["average"] = nullptr;
      }
      j["mean_coverage"] =
          std::round(cell.report.mean_coverage * 1e6) / 1e6;
      j["documents_used"] = cell.report.documents_used;
      out << j.dump() << '\n';
    }
  }
  write_output(args.out_path, out.str());
}

void cmd_cv(const CommonArgs& args) {
  check_report_format(args.format);
  Lexicon lex = load_lexicon(args.lexicon_path);
  Corpus corpus = load_corpus_arg(args.corpus_path, args.corpus_format);
  WordRep rep = resolve_rep(args.rep, lex);
  CvReport report = cross_validate_regression(lex, corpus, rep, args.k,
                                              args.seed, args.ridge);
  report.config["command"] = "cv";
  report.config["lexicon"] = args.lexicon_path;
  report.config["corpus"] = args.corpus_path;
  report.config["rep"] = to_string(rep);
  write_output(args.out_path, args.format == "tsv"
                                  ? cv_report_to_tsv(report)
                                  : cv_report_to_jsonl(report));
}

void cmd_classify(const CommonArgs& args) {
  check_report_format(args.format);
  Lexicon lex = load_lexicon(args.lexicon_path);
  Corpus corpus = load_corpus_arg(args.corpus_path, args.corpus_format);
  WordRep rep = resolve_rep(args.rep, lex);
  ClassifyCvReport report =
      cross_validate_classification(lex, corpus, rep, args.k, args.seed);
  report.config["command"] = "classify";
  report.config["lexicon"] = args.lexicon_path;
  report.config["corpus"] = args.corpus_path;
  report.config["rep"] = to_string(rep);
  write_output(args.out_path, args.format == "tsv"
                                  ? classify_report_to_tsv(report)
                                  : classify_report_to_jsonl(report));
}

void cmd_expand(const CommonArgs& args, const std::string& embeddings_path,
                const std::string& targets_path, const std::string& oov_from,
                const std::string& records_path) {
  Lexicon lex = load_lexicon(args.lexicon_path);
  EmbeddingModel model = load_embeddings(embeddings_path);

  if (targets_path.empty() == oov_from.empty())
    throw InputError("need exactly one of --targets or --oov-from");

  std::set<std::string> targets;
  if (!targets_path.empty()) {
    std::ifstream in(targets_path);
    if (!in) throw InputError("cannot open " + targets_path);
    std::string word;
    while (std::getline(in, word)) {
      if (!word.empty() && word.back() == '\r') word.pop_back();
      if (!word.empty()) targets.insert(word);
    }
  } else {
    // Out-of-vocabulary terms of a corpus under the lexicon representation.
    Corpus corpus = load_corpus_arg(oov_from, args.corpus_format);
    WordRep rep = resolve_rep(args.rep, lex);
    for (const auto& doc : corpus.documents)
      for (auto& term : term_stream(doc, rep))
        if (!lex.entries.contains(term)) targets.insert(std::move(term));
  }

  ExpansionResult result = expand_lexicon(lex, model, targets, args.threads);
  save_lexicon(result.lexicon, args.out_path);

  std::string records_out = records_path.empty()
                                ? args.out_path + ".records.tsv"
                                : records_path;
  write_output(records_out, records_to_tsv(result));
}

void cmd_ablate(const CommonArgs& args, const std::string& embeddings_path,
                const std::string& fractions_csv) {
  check_report_format(args.format);
  Lexicon lex = load_lexicon(args.lexicon_path);
  EmbeddingModel model = load_embeddings(embeddings_path);
  Corpus test = load_corpus_arg(args.test_path, args.test_format);
  WordRep rep = resolve_rep(args.rep, lex);
  auto fractions = parse_list<double>(fractions_csv, parse_real);

  auto points =
      ablation(lex, model, test, rep, fractions, args.seed, args.threads);

  ConfigEcho config;
  config["command"] = "ablate";
  config["lexicon"] = args.lexicon_path;
  config["embeddings"] = embeddings_path;
  config["test"] = args.test_path;
  config["rep"] = to_string(rep);
  config["fractions"] = fractions_csv;
  config["seed"] = std::to_string(args.seed);

  std::ostringstream out;
  if (args.format == "tsv") {
    out << tsv_config_lines(config);
    out << "keep_fraction\tr_reduced\tr_expanded\tcoverage_reduced\t"
           "coverage_expanded\n";
    for (const auto& p : points)
      out << fmt_fixed(p.keep_fraction) << '\t' << fmt_fixed(p.r_reduced)
          << '\t' << fmt_fixed(p.r_expanded) << '\t'
          << fmt_fixed(p.coverage_reduced) << '\t'
          << fmt_fixed(p.coverage_expanded) << '\n';
  } else {
    out << json_config_line(config);
    for (const auto& p : points) {
      json j;
      j["keep_fraction"] = std::round(p.keep_fraction * 1e6) / 1e6;
      j["r_reduced"] = std::round(p.r_reduced * 1e6) / 1e6;
      j["r_expanded"] = std::round(p.r_expanded * 1e6) / 1e6;
      j["coverage_reduced"] = std::round(p.coverage_reduced * 1e6) / 1e6;
      j["coverage_expanded"] = std::round(p.coverage_expanded * 1e6) / 1e6;
      out << j.dump() << '\n';
    }
  }
  write_output(args.out_path, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moodlex: emotion lexicon induction and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "moodlex 0.1.0");
  app.set_config("--config", "", "Read options from an INI/TOML file");

  CommonArgs args;
  std::string sizes_csv, reps_csv = "token,lemma,lemma_pos";
  std::string cutoffs_csv = "1", filters_csv = "false", fractions_csv;
  std::string embeddings_path, targets_path, oov_from, records_path;

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", args.threads,
                    "Worker threads (never changes results)");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", args.format, "Report format: tsv or jsonl");
  };

  auto* build = app.add_subcommand("build", "Induce a lexicon from a corpus");
  build->add_option("--corpus", args.corpus_path, "Corpus file")->required();
  build->add_option("--corpus-format", args.corpus_format,
                    "jsonl, tsv or auto");
  build->add_option("--rep", args.rep, "token, lemma or lemma_pos")->required();
  build->add_option("--cutoff", args.cutoff, "Minimum term frequency");
  build->add_flag("--filter", args.filter, "Drop zero-vote documents first");
  build->add_option("--out", args.out_path, "Lexicon TSV path")->required();
  build->add_option("--seed", args.seed, "Echoed into provenance");
  add_threads(build);
  build->callback([&] { cmd_build(args); });

  auto* eval = app.add_subcommand("eval", "Averaged-score Pearson evaluation");
  eval->add_option("--lexicon", args.lexicon_path, "Lexicon TSV")->required();
  eval->add_option("--test", args.test_path, "Gold corpus")->required();
  eval->add_option("--test-format", args.test_format, "jsonl, tsv or auto");
  eval->add_option("--rep", args.rep, "Override the lexicon representation");
  eval->add_option("--out", args.out_path, "Report path (default stdout)");
  add_format(eval);
  add_threads(eval);
  eval->callback([&] { cmd_eval(args); });

  auto* score = app.add_subcommand("score", "Per-document emotion vectors");
  score->add_option("--lexicon", args.lexicon_path, "Lexicon TSV")->required();
  score->add_option("--input", args.corpus_path, "Corpus to score")->required();
  score->add_option("--input-format", args.corpus_format, "jsonl, tsv or auto");
  score->add_option("--rep", args.rep, "Override the lexicon representation");
  score->add_option("--out", args.out_path, "Output path (default stdout)");
  add_format(score);
  add_threads(score);
  score->callback([&] { cmd_score(args); });

  auto* curve = app.add_subcommand("curve", "Learning curve over subset sizes");
  curve->add_option("--corpus", args.corpus_path, "Training corpus")->required();
  curve->add_option("--corpus-format", args.corpus_format, "jsonl, tsv or auto");
  curve->add_option("--test", args.test_path, "Fixed test corpus");
  curve->add_option("--test-format", args.test_format, "jsonl, tsv or auto");
  curve->add_option("--holdout", args.holdout,
                    "Split off a test fraction instead of --test");
  curve->add_option("--rep", args.rep, "token, lemma or lemma_pos")->required();
  curve->add_option("--cutoff", args.cutoff, "Minimum term frequency");
  curve->add_flag("--filter", args.filter, "Drop zero-vote documents first");
  auto* curve_sizes =
      curve->add_option("--sizes", sizes_csv, "Ascending subset sizes");
  curve_sizes->required();
  auto* curve_seed = curve->add_option("--seed", args.seed, "Subset seed");
  curve_seed->required();
  curve->add_option("--out", args.out_path, "Report path (default stdout)");
  add_format(curve);
  add_threads(curve);
  curve->callback([&] { cmd_curve(args, sizes_csv, true); });

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Grid over rep x cutoff x filter");
  sweep_cmd->add_option("--corpus", args.corpus_path, "Training corpus")
      ->required();
  sweep_cmd->add_option("--corpus-format", args.corpus_format,
                        "jsonl, tsv or auto");
  sweep_cmd->add_option("--test", args.test_path, "Fixed test corpus");
  sweep_cmd->add_option("--test-format", args.test_format,
                        "jsonl, tsv or auto");
  sweep_cmd->add_option("--holdout", args.holdout,
                        "Split off a test fraction instead of --test");
  sweep_cmd->add_option("--reps", reps_csv, "Comma list of representations");
  sweep_cmd->add_option("--cutoffs", cutoffs_csv, "Comma list of cutoffs");
  sweep_cmd->add_option("--filters", filters_csv,
                        "Comma list of true/false filter flags");
  auto* sweep_seed =
      sweep_cmd->add_option("--seed", args.seed, "Holdout split seed");
  sweep_cmd->add_option("--out", args.out_path, "Report path (default stdout)");
  add_format(sweep_cmd);
  add_threads(sweep_cmd);
  sweep_cmd->callback([&] {
    cmd_sweep(args, reps_csv, cutoffs_csv, filters_csv, !sweep_seed->empty());
  });

  auto* cv = app.add_subcommand("cv", "k-fold linear regression baseline");
  cv->add_option("--lexicon", args.lexicon_path, "Lexicon TSV")->required();
  cv->add_option("--corpus", args.corpus_path, "Annotated corpus")->required();
  cv->add_option("--corpus-format", args.corpus_format, "jsonl, tsv or auto");
  cv->add_option("--rep", args.rep, "Override the lexicon representation");
  cv->add_option("--k", args.k, "Fold count");
  cv->add_option("--seed", args.seed, "Fold assignment seed")->required();
  cv->add_option("--ridge", args.ridge, "L2 strength (weights only)");
  cv->add_option("--out", args.out_path, "Report path (default stdout)");
  add_format(cv);
  add_threads(cv);
  cv->callback([&] { cmd_cv(args); });

  auto* classify =
      app.add_subcommand("classify", "k-fold Gaussian NB over dominant emotions");
  classify->add_option("--lexicon", args.lexicon_path, "Lexicon TSV")
      ->required();
  classify->add_option("--corpus", args.corpus_path, "Annotated corpus")
      ->required();
  classify->add_option("--corpus-format", args.corpus_format,
                       "jsonl, tsv or auto");
  classify->add_option("--rep", args.rep, "Override the lexicon representation");
  classify->add_option("--k", args.k, "Fold count");
  classify->add_option("--seed", args.seed, "Fold assignment seed")->required();
  classify->add_option("--out", args.out_path, "Report path (default stdout)");
  add_format(classify);
  add_threads(classify);
  classify->callback([&] { cmd_classify(args); });

  auto* expand = app.add_subcommand(
      "expand", "Copy nearest-neighbor vectors onto out-of-vocabulary words");
  expand->add_option("--lexicon", args.lexicon_path, "Base lexicon TSV")
      ->required();
  expand->add_option("--embeddings", embeddings_path, "Embedding text file")
      ->required();
  expand->add_option("--targets", targets_path, "File with one word per line");
  expand->add_option("--oov-from", oov_from,
                     "Corpus whose out-of-vocabulary terms become targets");
  expand->add_option("--rep", args.rep, "Representation for --oov-from");
  expand->add_option("--out", args.out_path, "Expanded lexicon TSV")
      ->required();
  expand->add_option("--records", records_path,
                     "Expansion records TSV (default <out>.records.tsv)");
  add_threads(expand);
  expand->callback([&] {
    cmd_expand(args, embeddings_path, targets_path, oov_from, records_path);
  });

  auto* ablate = app.add_subcommand(
      "ablate", "Remove random vocabulary subsets and re-expand");
  ablate->add_option("--lexicon", args.lexicon_path, "Lexicon TSV")->required();
  ablate->add_option("--embeddings", embeddings_path, "Embedding text file")
      ->required();
  ablate->add_option("--test", args.test_path, "Gold corpus")->required();
  ablate->add_option("--test-format", args.test_format, "jsonl, tsv or auto");
  ablate->add_option("--rep", args.rep, "Override the lexicon representation");
  ablate->add_option("--fractions", fractions_csv,
                     "Comma list of keep fractions in (0,1]")
      ->required();
  ablate->add_option("--seed", args.seed, "Removal seed")->required();
  ablate->add_option("--out", args.out_path, "Report path (default stdout)");
  add_format(ablate);
  add_threads(ablate);
  ablate->callback([&] { cmd_ablate(args, embeddings_path, fractions_csv); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ComputeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
