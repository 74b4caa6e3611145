// Copyright 2026 The srlkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "srl/bridge.h"
#include "srl/dependency.h"
#include "srl/diagnostics.h"
#include "srl/encoding.h"
#include "srl/error.h"
#include "srl/evaluation.h"
#include "srl/inference.h"
#include "srl/ingest.h"
#include "srl/instance.h"
#include "srl/kernels/argmax.h"
#include "srl/percent.h"
#include "srl/projection.h"

namespace srl::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char *kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (unknown flag, bad value, conflicting flags)\n"
    "  3  unreadable or unwritable file\n"
    "  4  malformed input (JSON, tags, CoNLL-U, alignments)\n"
    "  5  structural violation (overlapping spans, duplicate predicates)\n"
    "  6  index out of range\n"
    "  7  prediction and gold files do not line up\n"
    "  8  subword encoding failure\n"
    "  9  bridge protocol failure\n"
    " 10  unusable dependency tree\n";

// ---------------------------------------------------------------------------
// Shared plumbing.

void RequireReadable(const std::string &path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw IoError("cannot read '" + path + "': no such file");
  }
  std::ifstream probe(path);
  if (!probe) throw IoError("cannot read '" + path + "'");
}

void RequireWritable(const std::string &path) {
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec)) {
    throw IoError("cannot write '" + path + "': directory '" +
                  parent.string() + "' does not exist");
  }
}

void WriteJsonFile(const std::string &path, const Json &report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << report.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

struct ReportSink {
  bool json = false;
  std::string report_path;

  void Emit(std::ostream &out, const Json &report,
            const std::string &table) const {
    if (!report_path.empty()) WriteJsonFile(report_path, report);
    if (json) {
      out << report.dump(2) << '\n';
    } else {
      out << table;
    }
  }
};

void AddReportFlags(CLI::App *cmd, ReportSink &sink) {
  cmd->add_flag("--json", sink.json, "Print the JSON report on stdout");
  cmd->add_option("--report", sink.report_path,
                  "Also write the JSON report to this file");
}

// An instance line reduced to what tagging needs; labels are optional.
struct TagInput {
  std::vector<Token> words;
  std::size_t predicate = 0;
};

TagInput TagInputFromJson(const Json &object, std::size_t line) {
  const std::string where = "line " + std::to_string(line);
  const std::string words_key(kWordsField);
  const std::string pred_key(kPredicateField);
  if (!object.is_object() || !object.contains(words_key) ||
      !object.contains(pred_key)) {
    throw FormatError(where + ": instance must carry '" + words_key +
                      "' and '" + pred_key + "'");
  }
  try {
    TagInput input;
    input.words =
        MakeTokens(object.at(words_key).get<std::vector<std::string>>());
    const Json &pred = object.at(pred_key);
    if (!pred.is_number_integer() || pred.get<long long>() < 0) {
      throw FormatError(where + ": '" + pred_key +
                        "' must be a non-negative integer");
    }
    input.predicate = pred.get<std::size_t>();
    if (input.predicate >= input.words.size()) {
      throw BoundsError(where + ": predicate index " +
                        std::to_string(input.predicate) +
                        " outside sentence of length " +
                        std::to_string(input.words.size()));
    }
    return input;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(where + ": " + e.what());
  }
}

// Consecutive lines with identical words form one sentence; a repeated
// predicate starts a new one.
struct TagGroup {
  std::vector<Token> words;
  std::vector<std::size_t> predicates;
  std::vector<std::size_t> lines;
};

std::vector<TagGroup> GroupTagInputs(const std::vector<TagInput> &inputs) {
  std::vector<TagGroup> groups;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const TagInput &input = inputs[i];
    const bool extend =
        !groups.empty() && groups.back().words == input.words &&
        std::find(groups.back().predicates.begin(),
                  groups.back().predicates.end(),
                  input.predicate) == groups.back().predicates.end();
    if (!extend) groups.push_back(TagGroup{input.words, {}, {}});
    groups.back().predicates.push_back(input.predicate);
    groups.back().lines.push_back(i);
  }
  return groups;
}

std::vector<SrlInstance> ReadInstances(const std::string &path,
                                       std::vector<Json> *lines = nullptr) {
  RequireReadable(path);
  std::vector<Json> objects = ReadJsonLines(path);
  std::vector<SrlInstance> instances;
  instances.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    try {
      instances.push_back(
          InstanceFromJson(objects[i], PreferredLabelField(objects[i])));
    } catch (const Error &e) {
      throw Error(e.code(), path + ":" + std::to_string(i + 1) + ": " +
                                e.what());
    }
  }
  if (lines) *lines = std::move(objects);
  return instances;
}

using BackendFactory = std::function<std::unique_ptr<TaggerBackend>()>;

struct BackendFlags {
  std::string backend = "mock";
  std::string bridge;
  std::uint64_t seed = 0;
  std::string simd = "auto";
};

void AddBackendFlags(CLI::App *cmd, BackendFlags &flags) {
  cmd->add_option("--backend", flags.backend, "Tagger backend")
      ->check(CLI::IsMember({"mock", "bridge"}));
  auto *bridge = cmd->add_option(
      "--bridge", flags.bridge,
      std::string("Bridge address host:port (default $") + kBridgeAddressEnv +
          ")");
  auto *seed = cmd->add_option("--seed", flags.seed, "Mock backend seed");
  seed->excludes(bridge);
  cmd->add_option("--simd", flags.simd, "Argmax kernel: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

BackendFactory MakeFactory(const BackendFlags &flags) {
  if (flags.simd == "scalar") {
    kernels::ForceIsa(kernels::Isa::kScalar);
  } else if (flags.simd == "avx2") {
    if (kernels::DetectIsa() != kernels::Isa::kAvx2) {
      throw Error(ErrorCode::kUsage, "--simd avx2 requested on a CPU without AVX2");
    }
    kernels::ForceIsa(kernels::Isa::kAvx2);
  } else {
    kernels::ForceIsa(std::nullopt);
  }
  if (flags.backend == "mock") {
    if (!flags.bridge.empty()) {
      throw Error(ErrorCode::kUsage, "--bridge requires --backend bridge");
    }
    const std::uint64_t seed = flags.seed;
    return [seed] { return std::make_unique<MockBackend>(seed); };
  }
  const std::string address = flags.bridge;
  return [address]() -> std::unique_ptr<TaggerBackend> {
    return BridgeBackend::Connect(address);
  };
}

struct TagRun {
  std::vector<TaggedSentence> sentences;
  InferenceStats stats;
};

// Tags every group, spreading groups over `jobs` workers that each own a
// backend. Results keep input order; the first error by group wins.
TagRun TagGroups(const std::vector<TagGroup> &groups,
                 const BackendFactory &factory, PredictOptions options,
                 std::size_t jobs) {
  TagRun run;
  run.sentences.resize(groups.size());
  jobs = std::max<std::size_t>(1, std::min(jobs, groups.size()));
  std::vector<InferenceStats> stats(jobs);
  std::vector<std::exception_ptr> errors(groups.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&](std::size_t w) {
    std::unique_ptr<TaggerBackend> backend;
    try {
      backend = factory();
    } catch (...) {
      errors[0] = errors[0] ? errors[0] : std::current_exception();
      failed = true;
      return;
    }
    for (std::size_t g; !failed && (g = next++) < groups.size();) {
      PredictOptions local = options;
      local.batch_id = "sentence " + std::to_string(g + 1);
      try {
        run.sentences[g] = PredictSrl(groups[g].words, groups[g].predicates,
                                      *backend, local, &stats[w]);
      } catch (...) {
        errors[g] = std::current_exception();
        failed = true;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto &t : threads) t.join();
  }
  for (const auto &error : errors) {
    if (error) std::rethrow_exception(error);
  }
  for (const auto &s : stats) run.stats.Merge(s);
  return run;
}

std::string FormatDouble(double value, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << value;
  return out.str();
}

// ---------------------------------------------------------------------------
// ingest

struct IngestFlags {
  std::string input;
  std::string output;
  std::string patterns;
  ReportSink sink;
};

void RunIngest(const IngestFlags &flags, std::ostream &out) {
  RequireReadable(flags.input);
  RequireWritable(flags.output);
  ArtifactPatterns patterns = ArtifactPatterns::Default();
  if (!flags.patterns.empty()) {
    RequireReadable(flags.patterns);
    patterns = ArtifactPatterns::FromFile(flags.patterns);
  }
  const std::vector<ColumnSentence> sentences =
      ReadColumnSentences(fs::path(flags.input));
  std::vector<ParsedSentence> parsed;
  parsed.reserve(sentences.size());
  for (const auto &sentence : sentences) {
    parsed.push_back(ParseSentence(sentence, patterns));
  }
  std::ofstream sink(flags.output);
  if (!sink) throw IoError("cannot write '" + flags.output + "'");
  const IngestReport report = EmitInstances(parsed, sink);

  std::ostringstream table;
  table << "sentences read     " << report.sentences_read << '\n'
        << "instances emitted  " << report.instances_emitted << '\n'
        << "sentences skipped  " << report.sentences_skipped << '\n';
  for (const auto &[id, reason] : report.skip_reasons) {
    table << "  sentence " << id << ": " << reason << '\n';
  }
  flags.sink.Emit(out, report.ToJson(), table.str());
}

// ---------------------------------------------------------------------------
// tag

struct TagFlags {
  std::string instances;
  std::string output;
  std::string mode = "cached";
  std::size_t max_batch = 0;
  std::size_t jobs = 1;
  BackendFlags backend;
  ReportSink sink;
};

InferenceMode ParseMode(const std::string &mode) {
  return mode == "baseline" ? InferenceMode::kBaseline : InferenceMode::kCached;
}

void RunTag(const TagFlags &flags, std::ostream &out) {
  RequireReadable(flags.instances);
  RequireWritable(flags.output);
  const BackendFactory factory = MakeFactory(flags.backend);
  std::vector<Json> lines = ReadJsonLines(fs::path(flags.instances));
  std::vector<TagInput> inputs;
  inputs.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    inputs.push_back(TagInputFromJson(lines[i], i + 1));
  }
  const std::vector<TagGroup> groups = GroupTagInputs(inputs);

  PredictOptions options;
  options.mode = ParseMode(flags.mode);
  options.max_batch = flags.max_batch;
  const TagRun run = TagGroups(groups, factory, options, flags.jobs);

  const std::string predicted_key(kPredictedField);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto &frames = run.sentences[g].frames;
    for (std::size_t k = 0; k < groups[g].lines.size(); ++k) {
      lines[groups[g].lines[k]][predicted_key] = BioStrings(frames[k].tags);
    }
  }
  WriteJsonLines(flags.output, lines);

  Json report = {{"mode", InferenceModeName(options.mode)},
                 {"backend", flags.backend.backend},
                 {"instances", lines.size()},
                 {"stats", run.stats.ToJson()}};
  std::ostringstream table;
  table << "mode               " << InferenceModeName(options.mode) << '\n'
        << "sentences          " << run.stats.sentences << '\n'
        << "predicates         " << run.stats.predicates << '\n'
        << "tokenize calls     " << run.stats.tokenize_calls() << '\n'
        << "forward calls      " << run.stats.forward_calls << '\n';
  flags.sink.Emit(out, report, table.str());
}

// ---------------------------------------------------------------------------
// bench

struct BenchFlags {
  std::string instances;
  std::size_t repeat = 3;
  std::size_t max_batch = 0;
  BackendFlags backend;
  std::string report_path;
  bool table = false;
};

void RunBench(const BenchFlags &flags, std::ostream &out) {
  RequireReadable(flags.instances);
  RequireWritable(flags.report_path);
  if (flags.repeat == 0) throw Error(ErrorCode::kUsage, "--repeat must be >= 1");
  const BackendFactory factory = MakeFactory(flags.backend);
  const std::vector<Json> lines = ReadJsonLines(fs::path(flags.instances));
  std::vector<TagInput> inputs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    inputs.push_back(TagInputFromJson(lines[i], i + 1));
  }
  const std::vector<TagGroup> groups = GroupTagInputs(inputs);

  Json modes = Json::object();
  std::map<InferenceMode, InferenceStats> totals;
  std::map<InferenceMode, std::vector<TaggedSentence>> outputs;
  for (InferenceMode mode : {InferenceMode::kCached, InferenceMode::kBaseline}) {
    PredictOptions options;
    options.mode = mode;
    options.max_batch = flags.max_batch;
    std::vector<double> wall_ms;
    for (std::size_t r = 0; r < flags.repeat; ++r) {
      const auto start = std::chrono::steady_clock::now();
      TagRun run = TagGroups(groups, factory, options, 1);
      const auto stop = std::chrono::steady_clock::now();
      wall_ms.push_back(
          std::chrono::duration<double, std::milli>(stop - start).count());
      if (r == 0) {
        totals[mode] = run.stats;
        outputs[mode] = std::move(run.sentences);
      }
    }
    std::vector<double> sorted = wall_ms;
    std::sort(sorted.begin(), sorted.end());
    Json entry = totals[mode].ToJson();
    entry["wall_ms"] = wall_ms;
    entry["wall_ms_median"] = sorted[sorted.size() / 2];
    modes[InferenceModeName(mode)] = entry;
  }

  const InferenceStats &cached = totals[InferenceMode::kCached];
  const InferenceStats &baseline = totals[InferenceMode::kBaseline];
  auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  const double mean_k = ratio(cached.predicates, cached.sentences);
  const double sentence_ratio = ratio(baseline.sentence_tokenize_calls,
                                      cached.sentence_tokenize_calls);
  const double total_ratio =
      ratio(baseline.tokenize_calls(), cached.tokenize_calls());
  const bool identical =
      outputs[InferenceMode::kCached] == outputs[InferenceMode::kBaseline];

  Json report = {{"instances", lines.size()},
                 {"sentences", cached.sentences},
                 {"predicates", cached.predicates},
                 {"mean_predicates_per_sentence", mean_k},
                 {"repeat", flags.repeat},
                 {"simd", kernels::IsaName(kernels::ActiveIsa())},
                 {"modes", modes},
                 {"sentence_tokenize_call_ratio", sentence_ratio},
                 {"tokenize_call_ratio", total_ratio},
                 {"outputs_identical", identical}};
  if (!flags.report_path.empty()) WriteJsonFile(flags.report_path, report);
  if (!flags.table) {
    out << report.dump(2) << '\n';
    return;
  }
  out << std::left << std::setw(10) << "mode" << std::right << std::setw(16)
      << "tokenize calls" << std::setw(15) << "forward calls" << std::setw(14)
      << "median ms" << '\n';
  for (InferenceMode mode : {InferenceMode::kCached, InferenceMode::kBaseline}) {
    out << std::left << std::setw(10) << InferenceModeName(mode) << std::right
        << std::setw(16) << totals[mode].tokenize_calls() << std::setw(15)
        << totals[mode].forward_calls << std::setw(14)
        << FormatDouble(modes[InferenceModeName(mode)]["wall_ms_median"]
                            .get<double>(),
                        3)
        << '\n';
  }
  out << "mean predicates per sentence  " << FormatDouble(mean_k, 4) << '\n'
      << "sentence tokenize call ratio  " << FormatDouble(sentence_ratio, 4)
      << '\n'
      << "outputs identical             " << (identical ? "yes" : "no")
      << '\n';
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeFlags {
  std::string pred;
  std::string deps;
  std::string out_fixed;
  std::string out_review;
  ReportSink sink;
};

void RunAnalyze(const AnalyzeFlags &flags, std::ostream &out) {
  RequireReadable(flags.pred);
  if (!flags.deps.empty()) RequireReadable(flags.deps);
  RequireWritable(flags.out_fixed);
  RequireWritable(flags.out_review);

  std::vector<Json> lines;
  const std::vector<SrlInstance> instances = ReadInstances(flags.pred, &lines);
  std::vector<DepTree> trees;
  if (!flags.deps.empty()) trees = ReadConllu(fs::path(flags.deps));
  const std::vector<SentenceGroup> groups = GroupSentences(instances);

  std::vector<AnalysisFrame> frames(instances.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t member : groups[g].members) {
      frames[member] = AnalysisFrame{g, instances[member].predicate_word_idx,
                                     instances[member].labels,
                                     g < trees.size() ? &trees[g] : nullptr};
    }
  }
  const AnalysisResult result = AnalyzeCorpus(frames);

  if (!flags.out_fixed.empty()) {
    std::vector<Json> fixed = lines;
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      fixed[i][std::string(PreferredLabelField(lines[i]))] =
          BioStrings(result.repaired[i]);
    }
    WriteJsonLines(flags.out_fixed, fixed);
  }
  std::size_t review_count = 0;
  if (!flags.out_review.empty()) {
    std::vector<Json> review;
    for (const auto &record : result.records) {
      if (record.action != RepairAction::kReviewRequired) continue;
      Json entry = record.ToJson();
      entry["words"] = TokenTexts(instances[record.frame_index].words);
      review.push_back(std::move(entry));
    }
    review_count = review.size();
    WriteJsonLines(flags.out_review, review);
  } else {
    review_count = std::count_if(
        result.records.begin(), result.records.end(), [](const auto &r) {
          return r.action == RepairAction::kReviewRequired;
        });
  }

  Json report = result.histogram.ToJson();
  report["repeated_pairs"] = result.records.size();
  report["review_records"] = review_count;
  std::ostringstream table;
  table << result.histogram.ToTable();
  table << "fixable tokens     " << result.histogram.fixable_tokens() << " ("
        << FormatHundredths(PercentHundredths(result.histogram.fixable_tokens(),
                                              result.histogram.total_tokens))
        << "%)\n"
        << "review records     " << review_count << '\n'
        << "unanalyzable frames " << result.histogram.unanalyzable_frames
        << '\n';
  flags.sink.Emit(out, report, table.str());
}

// ---------------------------------------------------------------------------
// score

struct ScoreFlags {
  std::string pred;
  std::string gold;
  bool include_v = false;
  bool fold_cr = false;
  ReportSink sink;
};

void RequireSameWords(const std::vector<SrlInstance> &a,
                      const std::vector<SrlInstance> &b,
                      const std::string &what) {
  if (a.size() != b.size()) {
    throw AlignmentError(what + ": " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + " instances");
  }
  std::vector<std::string> offending;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].words != b[i].words) offending.push_back(std::to_string(i + 1));
  }
  if (!offending.empty()) {
    std::string list;
    for (const auto &id : offending) list += (list.empty() ? "" : ", ") + id;
    throw AlignmentError(what + ": words differ on lines " + list);
  }
}

void RunScore(const ScoreFlags &flags, std::ostream &out) {
  const auto pred = ReadInstances(flags.pred);
  const auto gold = ReadInstances(flags.gold);
  RequireSameWords(pred, gold, "prediction and gold");
  std::vector<Frame> pred_frames, gold_frames;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    pred_frames.push_back(MakeFrame(pred[i].predicate_word_idx, pred[i].labels));
    gold_frames.push_back(MakeFrame(gold[i].predicate_word_idx, gold[i].labels));
    ids.push_back("line " + std::to_string(i + 1));
  }
  const ScoreReport score = ScoreSpans(
      pred_frames, gold_frames, ScoreOptions{flags.include_v, flags.fold_cr},
      ids);
  Json report = score.ToJson();
  report["missing_roles"] = MissingRoles(pred_frames, gold_frames).ToJson();
  flags.sink.Emit(out, report, score.ToTable());
}

// ---------------------------------------------------------------------------
// agreement

struct AgreementFlags {
  std::string first;
  std::string second;
  std::string gold;
  std::string first_name = "A";
  std::string second_name = "B";
  ReportSink sink;
};

std::vector<std::string> FlatLabels(const std::vector<SrlInstance> &instances) {
  std::vector<std::string> out;
  for (const auto &instance : instances) {
    for (const auto &tag : instance.labels) out.push_back(tag.str());
  }
  return out;
}

void RunAgreement(const AgreementFlags &flags, std::ostream &out) {
  const auto first = ReadInstances(flags.first);
  const auto second = ReadInstances(flags.second);
  const auto gold = ReadInstances(flags.gold);
  RequireSameWords(first, gold, flags.first_name + " and gold");
  RequireSameWords(second, gold, flags.second_name + " and gold");
  AgreementReport report = AgreementPartition(
      FlatLabels(first), FlatLabels(second), FlatLabels(gold));
  report.first_name = flags.first_name;
  report.second_name = flags.second_name;
  flags.sink.Emit(out, report.ToJson(), report.ToTable());
}

// ---------------------------------------------------------------------------
// project

struct ProjectFlags {
  std::string src;
  std::string tgt;
  std::string align;
  std::string deps;
  std::string output;
  ReportSink sink;
};

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void RunProject(const ProjectFlags &flags, std::ostream &out) {
  RequireReadable(flags.tgt);
  RequireReadable(flags.align);
  if (!flags.deps.empty()) RequireReadable(flags.deps);
  RequireWritable(flags.output);

  const std::vector<SrlInstance> instances = ReadInstances(flags.src);
  const std::vector<SentenceGroup> groups = GroupSentences(instances);
  std::vector<DepTree> trees;
  if (!flags.deps.empty()) trees = ReadConllu(fs::path(flags.deps));

  std::vector<SourceSentence> sources;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    SourceSentence source;
    source.words = groups[g].words;
    for (std::size_t member : groups[g].members) {
      source.frames.push_back(PredicateTags{
          instances[member].predicate_word_idx, instances[member].labels});
    }
    source.tree = g < trees.size() ? &trees[g] : nullptr;
    sources.push_back(std::move(source));
  }

  std::vector<std::vector<Token>> targets;
  const auto target_lines = ReadLines(flags.tgt);
  for (std::size_t i = 0; i < target_lines.size(); ++i) {
    std::istringstream words(target_lines[i]);
    std::vector<std::string> texts;
    for (std::string w; words >> w;) texts.push_back(w);
    try {
      targets.push_back(MakeTokens(texts));
    } catch (const Error &e) {
      throw Error(e.code(), flags.tgt + ":" + std::to_string(i + 1) + ": " +
                                e.what());
    }
  }
  std::vector<Alignment> alignments;
  const auto align_lines = ReadLines(flags.align);
  for (std::size_t i = 0; i < align_lines.size(); ++i) {
    try {
      alignments.push_back(Alignment::ParsePharaoh(align_lines[i]));
    } catch (const Error &e) {
      throw Error(e.code(), flags.align + ":" + std::to_string(i + 1) + ": " +
                                e.what());
    }
  }

  const ProjectionResult result = ProjectCorpus(sources, targets, alignments);
  std::vector<Json> lines;
  std::size_t dropped = 0, frames = 0, unaligned_predicates = 0;
  for (const auto &sentence : result.sentences) {
    lines.push_back(sentence.ToJson());
    dropped += sentence.dropped_links.size();
    frames += sentence.frames.size();
    for (const auto &f : sentence.frames) {
      if (!f.predicate_index) ++unaligned_predicates;
    }
  }
  WriteJsonLines(flags.output, lines);

  Json skipped = Json::array();
  for (const auto &[index, reason] : result.skipped) {
    skipped.push_back({{"sentence_index", index}, {"reason", reason}});
  }
  Json report = {{"source_sentences", sources.size()},
                 {"projected_sentences", result.sentences.size()},
                 {"projected_frames", frames},
                 {"unaligned_predicates", unaligned_predicates},
                 {"dropped_links", dropped},
                 {"skipped", skipped}};
  std::ostringstream table;
  table << "source sentences     " << sources.size() << '\n'
        << "projected sentences  " << result.sentences.size() << '\n'
        << "projected frames     " << frames << '\n'
        << "dropped links        " << dropped << '\n'
        << "skipped sentences    " << result.skipped.size() << '\n';
  for (const auto &[index, reason] : result.skipped) {
    table << "  sentence " << index << ": " << reason << '\n';
  }
  flags.sink.Emit(out, report, table.str());
}

// ---------------------------------------------------------------------------
// serve-mock

struct ServeFlags {
  std::uint16_t port = 0;
  std::uint64_t seed = 0;
  std::size_t max_connections = 0;
};

void RunServeMock(const ServeFlags &flags, std::ostream &out) {
  const std::uint64_t seed = flags.seed;
  BridgeServer server([seed] { return std::make_unique<MockBackend>(seed); },
                      flags.port);
  out << "listening on " << server.address() << std::endl;
  server.Run(flags.max_connections);
}

// ---------------------------------------------------------------------------

void PrintError(std::ostream &err, ErrorCode code, const std::string &message) {
  Json error = {{"error",
                 {{"code", ErrorCodeName(code)},
                  {"exit_code", static_cast<int>(code)},
                  {"message", message}}}};
  err << error.dump() << '\n';
}

}  // namespace

int Run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Semantic role labeling toolkit: ingestion, tagging, "
               "diagnostics, scoring and projection over JSON Lines."};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  IngestFlags ingest;
  auto *ingest_cmd = app.add_subcommand(
      "ingest", "Convert column-format annotations to JSON Lines instances");
  ingest_cmd->add_option("--input", ingest.input, "Column-format file")
      ->required();
  ingest_cmd->add_option("--output", ingest.output, "Instance JSONL output")
      ->required();
  ingest_cmd->add_option("--artifact-patterns", ingest.patterns,
                         "File of regular expressions, one per line");
  AddReportFlags(ingest_cmd, ingest.sink);

  TagFlags tag;
  auto *tag_cmd = app.add_subcommand("tag", "Predict role labels");
  tag_cmd->add_option("--instances", tag.instances, "Instance JSONL input")
      ->required();
  tag_cmd->add_option("--output", tag.output, "JSONL output")->required();
  tag_cmd->add_option("--mode", tag.mode, "Input assembly path")
      ->check(CLI::IsMember({"cached", "baseline"}));
  tag_cmd->add_option("--max-batch", tag.max_batch,
                      "Rows per forward call (0 = whole sentence)");
  tag_cmd->add_option("--jobs", tag.jobs, "Parallel sentences")
      ->check(CLI::PositiveNumber);
  AddBackendFlags(tag_cmd, tag.backend);
  AddReportFlags(tag_cmd, tag.sink);

  BenchFlags bench;
  auto *bench_cmd = app.add_subcommand(
      "bench", "Compare cached and baseline tagging; prints a JSON report");
  bench_cmd->add_option("--instances", bench.instances, "Instance JSONL input")
      ->required();
  bench_cmd->add_option("--repeat", bench.repeat, "Timed runs per mode");
  bench_cmd->add_option("--max-batch", bench.max_batch,
                        "Rows per forward call (0 = whole sentence)");
  bench_cmd->add_option("--report", bench.report_path,
                        "Also write the JSON report to this file");
  bench_cmd->add_flag("--table", bench.table,
                      "Print a text table instead of JSON");
  AddBackendFlags(bench_cmd, bench.backend);

  AnalyzeFlags analyze;
  auto *analyze_cmd = app.add_subcommand(
      "analyze", "Bucket repeated-role spans and repair the fixable ones");
  analyze_cmd->add_option("--pred", analyze.pred, "Tagged instance JSONL")
      ->required();
  analyze_cmd->add_option("--deps", analyze.deps,
                          "CoNLL-U parses, one per sentence");
  analyze_cmd->add_option("--out-fixed", analyze.out_fixed,
                          "Repaired instance JSONL");
  analyze_cmd->add_option("--out-review", analyze.out_review,
                          "Records needing manual review");
  AddReportFlags(analyze_cmd, analyze.sink);

  ScoreFlags score;
  auto *score_cmd = app.add_subcommand("score", "Exact-match span P/R/F1");
  score_cmd->add_option("--pred", score.pred, "Predicted JSONL")->required();
  score_cmd->add_option("--gold", score.gold, "Gold JSONL")->required();
  score_cmd->add_flag("--include-v", score.include_v, "Score V spans");
  score_cmd->add_flag("--fold-cr", score.fold_cr,
                      "Score C-X and R-X spans as X");
  AddReportFlags(score_cmd, score.sink);

  AgreementFlags agreement;
  auto *agreement_cmd = app.add_subcommand(
      "agreement", "Token-level agreement of two systems against gold");
  agreement_cmd->add_option("--a", agreement.first, "First system JSONL")
      ->required();
  agreement_cmd->add_option("--b", agreement.second, "Second system JSONL")
      ->required();
  agreement_cmd->add_option("--gold", agreement.gold, "Gold JSONL")
      ->required();
  agreement_cmd->add_option("--name-a", agreement.first_name,
                            "Display name of the first system");
  agreement_cmd->add_option("--name-b", agreement.second_name,
                            "Display name of the second system");
  AddReportFlags(agreement_cmd, agreement.sink);

  ProjectFlags project;
  auto *project_cmd = app.add_subcommand(
      "project", "Transfer source annotations to target sentences");
  project_cmd->add_option("--src", project.src, "Source instance JSONL")
      ->required();
  project_cmd->add_option("--tgt", project.tgt,
                          "Target sentences, one whitespace-tokenized per line")
      ->required();
  project_cmd->add_option("--align", project.align,
                          "Alignments, one Pharaoh line per sentence")
      ->required();
  project_cmd->add_option("--deps", project.deps,
                          "Source CoNLL-U parses for span repair");
  project_cmd->add_option("--out", project.output, "Projected JSONL")
      ->required();
  AddReportFlags(project_cmd, project.sink);

  ServeFlags serve;
  auto *serve_cmd = app.add_subcommand(
      "serve-mock", "Serve the mock backend over the bridge protocol");
  serve_cmd->add_option("--port", serve.port, "TCP port (0 = any)");
  serve_cmd->add_option("--seed", serve.seed, "Mock backend seed");
  serve_cmd->add_option("--max-connections", serve.max_connections,
                        "Exit after serving this many connections");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    PrintError(err, ErrorCode::kUsage, e.what());
    return static_cast<int>(ErrorCode::kUsage);
  }

  try {
    if (*ingest_cmd) RunIngest(ingest, out);
    if (*tag_cmd) RunTag(tag, out);
    if (*bench_cmd) RunBench(bench, out);
    if (*analyze_cmd) RunAnalyze(analyze, out);
    if (*score_cmd) {
      RequireReadable(score.pred);
      RequireReadable(score.gold);
      RunScore(score, out);
    }
    if (*agreement_cmd) RunAgreement(agreement, out);
    if (*project_cmd) RunProject(project, out);
    if (*serve_cmd) RunServeMock(serve, out);
  } catch (const Error &e) {
    PrintError(err, e.code(), e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception &e) {
    PrintError(err, ErrorCode::kInternal, e.what());
    return static_cast<int>(ErrorCode::kInternal);
  }
  return 0;
}

}  // namespace srl::cli
