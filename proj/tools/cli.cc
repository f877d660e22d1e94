/* Copyright 2026 The biasdec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cli.h"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "biasdec/alphabet.h"
#include "biasdec/bias_trie.h"
#include "biasdec/context.h"
#include "biasdec/decode_config.h"
#include "biasdec/decoder.h"
#include "biasdec/error.h"
#include "biasdec/harness.h"
#include "biasdec/logit_matrix.h"
#include "biasdec/metrics.h"
#include "biasdec/ngram_lm.h"
#include "biasdec/text.h"

namespace biasdec {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ShortestDouble(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

const std::vector<std::string>& ModeNames() {
  static const std::vector<std::string> names = {"greedy", "base",   "base_lm",
                                                 "wb",     "wb_ctx", "full"};
  return names;
}

bool NeedsLm(DecodeMode mode) {
  return mode != DecodeMode::kGreedy && mode != DecodeMode::kBase;
}

// Writes through `fn` to --out when given, else to the result stream.
void Emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  fn(file);
  if (!file.flush()) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
}

struct ConfigFlags {
  std::string mode;
  std::string config_path;
  std::optional<int> beam_width;
  std::optional<double> cumulative_mass, unigram_scale, oov_penalty,
      bias_boost, lm_weight, word_bonus, lookahead_scale, swap_percent;
  bool sentence_markers = false;
  bool print_config = false;

  void Add(CLI::App* app, bool with_mode) {
    if (with_mode) {
      app->add_option("--mode", mode, "Decoding mode (default full)")
          ->check(CLI::IsMember(ModeNames()));
    }
    app->add_option("--config", config_path, "key=value config file")
        ->check(CLI::ExistingFile);
    app->add_option("--N,--beam-width", beam_width, "Beam width (100)");
    app->add_option("--C,--cumulative-mass", cumulative_mass,
                    "Sampling mass threshold (0.991)");
    app->add_option("--lambda", unigram_scale, "Unigram bias scale (1.424)");
    app->add_option("--delta", oov_penalty, "OOV penalty (10.33)");
    app->add_option("--gamma", bias_boost, "OOV bias boost (13.31)");
    app->add_option("--alpha", lm_weight, "LM weight (0.788)");
    app->add_option("--beta", word_bonus, "Word-count bonus (0.119)");
    app->add_option("--sigma", lookahead_scale,
                    "Rescoring-likelihood scale (10.91)");
    app->add_option("--K,--swap-percent", swap_percent,
                    "Swappable share of the beam in percent (24)");
    app->add_flag("--sentence-markers", sentence_markers,
                  "Score <s> and </s> around each utterance");
    app->add_flag("--print-config", print_config,
                  "Print the effective config and exit");
  }

  // Mode preset, then the config file, then individual flags.
  DecodeConfig Apply(DecodeConfig cfg, bool keep_mode) const {
    const DecodeMode run_mode = cfg.mode;
    if (!config_path.empty()) cfg = LoadConfig(config_path, cfg);
    if (keep_mode) cfg.mode = run_mode;
    if (beam_width) cfg.beam_width = *beam_width;
    if (cumulative_mass) cfg.cumulative_mass = *cumulative_mass;
    if (unigram_scale) cfg.unigram_scale = *unigram_scale;
    if (oov_penalty) cfg.oov_penalty = *oov_penalty;
    if (bias_boost) cfg.bias_boost = *bias_boost;
    if (lm_weight) cfg.lm_weight = *lm_weight;
    if (word_bonus) cfg.word_bonus = *word_bonus;
    if (lookahead_scale) cfg.lookahead_scale = *lookahead_scale;
    if (swap_percent) cfg.swap_percent = *swap_percent;
    if (sentence_markers) cfg.sentence_markers = true;
    cfg.Validate();
    return cfg;
  }

  DecodeConfig Effective() const {
    DecodeMode m = DecodeMode::kFull;
    if (!mode.empty()) m = *ParseMode(mode);
    DecodeConfig cfg = Apply(PresetFor(m), !mode.empty());
    return cfg;
  }
};

struct BiasFlags {
  std::string bias;
  std::string bias_file;
  std::string captions;
  std::string stopwords;

  void Add(CLI::App* app) {
    auto* b = app->add_option("--bias", bias, "Comma-separated biasing words");
    auto* f = app->add_option("--bias-file", bias_file,
                              "Biasing words or phrases, one per line")
                  ->check(CLI::ExistingFile);
    auto* c = app->add_option("--captions", captions,
                              "Scene captions, one per line")
                  ->check(CLI::ExistingFile);
    b->excludes(f)->excludes(c);
    f->excludes(c);
    app->add_option("--stopwords", stopwords,
                    "Stopword file for --captions (built-in list by default)")
        ->check(CLI::ExistingFile)
        ->needs(c);
  }

  std::vector<std::string> Words() const {
    std::vector<std::string> phrases;
    if (!bias.empty()) {
      for (const std::string& w : SplitOn(bias, ',')) {
        auto t = Trim(w);
        if (!t.empty()) phrases.emplace_back(t);
      }
    } else if (!bias_file.empty()) {
      std::ifstream in(bias_file);
      if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + bias_file);
      std::string line;
      while (std::getline(in, line)) {
        auto t = Trim(line);
        if (!t.empty()) phrases.emplace_back(t);
      }
    } else if (!captions.empty()) {
      const StopwordSet sw =
          stopwords.empty() ? DefaultStopwords() : LoadStopwords(stopwords);
      return ExtractBiasWords(LoadCaptions(captions), sw).words;
    }
    return SplitBiasPhrases(phrases);
  }
};

struct CorpusFlags {
  std::string corpus;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  double noise = 0.5;
  int frames_per_char = 2;
  double margin = 0.2;
  std::string confusions;

  void Add(CLI::App* app, bool with_corpus) {
    if (with_corpus) {
      app->add_option("--corpus", corpus,
                      "Corpus file (reference<TAB>bias,words); generated when "
                      "absent")
          ->check(CLI::ExistingFile);
    }
    app->add_option("--count", count, "Generated corpus size")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Corpus and channel seed")
        ->capture_default_str();
    app->add_option("--noise", noise, "Word corruption probability")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--frames-per-char", frames_per_char,
                    "Frames rendered per character")
        ->capture_default_str()
        ->check(CLI::Range(2, 64));
    app->add_option("--margin", margin, "Lead of the wrong symbol over 0.5")
        ->capture_default_str();
    app->add_option("--confusions", confusions,
                    "Confusion pairs, \"target confusion\" per line")
        ->check(CLI::ExistingFile);
  }

  CorpusSpec Spec() const {
    CorpusSpec spec;
    spec.utterances = corpus.empty() ? GenerateInstructionCorpus(count, seed)
                                     : LoadCorpus(corpus);
    spec.noise = noise;
    spec.seed = seed;
    spec.frames_per_char = frames_per_char;
    spec.margin = margin;
    spec.confusion_pairs = confusions.empty() ? DefaultConfusionPairs()
                                              : LoadConfusionPairs(confusions);
    return spec;
  }
};

Alphabet AlphabetFrom(const std::string& path) {
  return path.empty() ? Alphabet::EnglishGraphemes() : LoadAlphabet(path);
}

void AddVocab(CLI::App* app, std::string& vocab) {
  app->add_option("--vocab", vocab,
                  "Vocabulary file, one token per line (default: <blank>, "
                  "<space>, a-z)")
      ->check(CLI::ExistingFile);
}

void AddLm(CLI::App* app, std::string& lm) {
  app->add_option("--lm", lm, "ARPA language model (plain or gzip)")
      ->envname("BIASDEC_LM");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Contextual-biasing CTC beam-search decoder", "biasdec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LibraryVersion()));

  // decode
  auto* decode = app.add_subcommand("decode", "Decode one posterior file");
  std::string logits_path, vocab_path, lm_path, out_path;
  int nbest = 1;
  ConfigFlags cfg_flags;
  BiasFlags bias_flags;
  decode->add_option("--logits", logits_path, "CTCP posterior file")
      ->check(CLI::ExistingFile);
  AddVocab(decode, vocab_path);
  AddLm(decode, lm_path);
  bias_flags.Add(decode);
  cfg_flags.Add(decode, true);
  decode->add_option("--nbest", nbest, "Print this many scored transcripts")
      ->check(CLI::Range(1, 1 << 20));
  decode->add_option("--out", out_path, "Write results here");

  // eval
  auto* eval = app.add_subcommand("eval", "Decode a synthetic corpus and score it");
  CorpusFlags corpus_flags;
  std::string modes = "base,base_lm,wb,wb_ctx,full";
  std::string report_path, manifest_path, hyp_path;
  bool anti = false;
  int jobs = 1;
  corpus_flags.Add(eval, true);
  eval->add_option("--modes", modes,
                   "Comma-separated runs: greedy base base_lm wb wb_ctx full "
                   "full_c1 full_sigma0")
      ->capture_default_str();
  eval->add_flag("--anti", anti, "Remove spoken words from every bias list");
  eval->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  AddVocab(eval, vocab_path);
  AddLm(eval, lm_path);
  ConfigFlags eval_cfg;
  eval_cfg.Add(eval, false);
  eval->add_option("--out", out_path, "Write the CSV report here");
  eval->add_option("--report", report_path, "Write a key=value report here");
  eval->add_option("--manifest", manifest_path, "Write the run manifest here");
  eval->add_option("--hypotheses", hyp_path,
                   "Write run<TAB>reference<TAB>hypothesis lines here");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instruction corpus");
  CorpusFlags gen_flags;
  std::string logits_dir;
  gen_flags.Add(gen, true);
  AddVocab(gen, vocab_path);
  gen->add_option("--logits-dir", logits_dir,
                  "Also render every utterance as a CTCP file here");
  gen->add_option("--out", out_path, "Write the corpus here");

  // trie
  auto* trie_cmd = app.add_subcommand("trie", "Inspect the biasing trie");
  BiasFlags trie_bias;
  std::vector<std::string> queries;
  trie_bias.Add(trie_cmd);
  trie_cmd->add_option("--query", queries,
                       "Prefix to look up (repeatable); prints tn, nl, complete");
  trie_cmd->add_option("--out", out_path, "Write results here");

  // search
  auto* search = app.add_subcommand("search", "Random hyper-parameter search");
  CorpusFlags search_corpus;
  int trials = 50;
  std::uint64_t search_seed = 7;
  search_corpus.Add(search, true);
  search->add_option("--trials", trials, "Number of sampled configs")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000000));
  search->add_option("--search-seed", search_seed, "Sampling seed")
      ->capture_default_str();
  search->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  AddVocab(search, vocab_path);
  AddLm(search, lm_path);
  ConfigFlags search_cfg;
  search_cfg.Add(search, true);
  search->add_option("--out", out_path, "Write the best config here");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    auto load_lm = [&](bool required) -> std::optional<NGramModel> {
      if (lm_path.empty()) {
        if (required) throw UsageError("this mode needs --lm or BIASDEC_LM");
        return std::nullopt;
      }
      return LoadArpa(lm_path);
    };

    if (active == decode) {
      const DecodeConfig cfg = cfg_flags.Effective();
      if (cfg_flags.print_config) {
        Emit(out_path, out, [&](std::ostream& o) { o << FormatConfig(cfg); });
        return kExitOk;
      }
      if (logits_path.empty()) throw UsageError("--logits is required");
      const Alphabet alphabet = AlphabetFrom(vocab_path);
      const LogitMatrix logits = LoadLogits(logits_path);
      auto lm = load_lm(NeedsLm(cfg.mode));
      const std::vector<std::string> words = bias_flags.Words();
      const BiasTrie trie = BiasTrie::Build(words);
      DecodeResult r = Decode(logits, alphabet, lm ? &*lm : nullptr, trie, cfg);
      Emit(out_path, out, [&](std::ostream& o) {
        if (nbest == 1) {
          o << (r.transcripts.empty() ? "" : r.transcripts[0]) << '\n';
          return;
        }
        for (std::size_t i = 0;
             i < r.transcripts.size() && i < static_cast<std::size_t>(nbest); ++i) {
          o << ShortestDouble(r.scores[i]) << '\t' << r.transcripts[i] << '\n';
        }
      });
      err << "frames=" << r.stats.frames << " candidates=" << r.stats.candidates
          << " bias_words=" << trie.word_count() << " wall_ms=" << std::fixed
          << std::setprecision(3) << r.stats.wall_ms << '\n';
      return kExitOk;
    }

    if (active == eval) {
      std::vector<ModeRun> runs;
      for (const std::string& label : SplitOn(modes, ',')) {
        auto t = std::string(Trim(label));
        if (t.empty()) continue;
        auto run = StandardRun(t);
        if (!run) throw UsageError("unknown run \"" + t + "\" in --modes");
        run->config = eval_cfg.Apply(run->config, true);
        runs.push_back(std::move(*run));
      }
      if (runs.empty()) throw UsageError("--modes is empty");
      if (eval_cfg.print_config) {
        Emit(out_path, out, [&](std::ostream& o) {
          for (const ModeRun& run : runs) {
            o << "# " << run.label << '\n' << FormatConfig(run.config);
          }
        });
        return kExitOk;
      }
      bool any_lm = false;
      for (const ModeRun& run : runs) any_lm = any_lm || NeedsLm(run.config.mode);
      const Alphabet alphabet = AlphabetFrom(vocab_path);
      auto lm = load_lm(any_lm);
      const NGramModel empty_lm = NGramModel::FromArpaText(
          "\\data\\\nngram 1=1\n\n\\1-grams:\n-1\t<unk>\n\n\\end\\\n");
      const CorpusSpec spec = corpus_flags.Spec();
      const auto start = std::chrono::steady_clock::now();
      ExperimentResult result =
          RunExperiment(spec, alphabet, lm ? *lm : empty_lm, runs, anti, jobs);
      const double total_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
      std::vector<std::pair<std::string, EvalReport>> rows;
      for (const ModeOutcome& m : result.modes) rows.emplace_back(m.label, m.report);
      Emit(out_path, out, [&](std::ostream& o) { WriteReportCsv(o, rows); });
      if (!report_path.empty()) {
        Emit(report_path, out, [&](std::ostream& o) {
          o << "utterances=" << spec.utterances.size() << '\n'
            << "anti=" << (anti ? "true" : "false") << '\n'
            << "mean_bias_words=" << std::fixed << std::setprecision(2)
            << result.MeanBiasSize() << '\n';
          for (const ModeOutcome& m : result.modes) {
            WriteReportText(o, m.label, m.report);
            std::uint64_t cands = 0;
            for (auto c : m.candidates) cands += c;
            o << m.label << ".candidates=" << cands << '\n';
          }
        });
      }
      if (!manifest_path.empty()) {
        Emit(manifest_path, out,
             [&](std::ostream& o) { WriteRunManifest(o, spec, runs, anti); });
      }
      if (!hyp_path.empty()) {
        Emit(hyp_path, out, [&](std::ostream& o) {
          for (const ModeOutcome& m : result.modes) {
            for (std::size_t i = 0; i < m.hypotheses.size(); ++i) {
              o << m.label << '\t' << spec.utterances[i].reference << '\t'
                << m.hypotheses[i] << '\n';
            }
          }
        });
      }
      for (const ModeOutcome& m : result.modes) {
        err << m.label << " mean_ms=" << std::fixed << std::setprecision(3)
            << m.MeanWallMs() << '\n';
      }
      err << "total_ms=" << std::fixed << std::setprecision(1) << total_ms << '\n';
      return kExitOk;
    }

    if (active == gen) {
      const CorpusSpec spec = gen_flags.Spec();
      Emit(out_path, out, [&](std::ostream& o) { WriteCorpus(o, spec.utterances); });
      if (!logits_dir.empty()) {
        const Alphabet alphabet = AlphabetFrom(vocab_path);
        std::filesystem::create_directories(logits_dir);
        SaveAlphabet(alphabet, std::filesystem::path(logits_dir) / "chars.txt");
        for (std::size_t i = 0; i < spec.utterances.size(); ++i) {
          std::ostringstream name;
          name << "utt-" << std::setw(5) << std::setfill('0') << i << ".ctcp";
          SaveLogits(SynthesizeLogits(spec.utterances[i].reference, spec,
                                      alphabet, UtteranceSeed(spec.seed, i)),
                     std::filesystem::path(logits_dir) / name.str());
        }
      }
      return kExitOk;
    }

    if (active == trie_cmd) {
      const BiasTrie trie = BiasTrie::Build(trie_bias.Words());
      Emit(out_path, out, [&](std::ostream& o) {
        o << "words=" << trie.word_count() << '\n'
          << "nodes=" << trie.node_count() << '\n';
        for (const std::string& w : trie.Words()) o << "word=" << w << '\n';
        for (const std::string& q : queries) {
          TrieStats s = trie.Stats(trie.Advance(trie.Root(), ToLower(q)));
          o << "query=" << q << " tn=" << s.traversed << " nl="
            << (s.to_leaf == TrieStats::kUnreachable ? std::string("inf")
                                                      : std::to_string(s.to_leaf))
            << " complete=" << (s.complete ? "true" : "false") << '\n';
        }
      });
      return kExitOk;
    }

    if (active == search) {
      const DecodeConfig base = search_cfg.Effective();
      if (search_cfg.print_config) {
        Emit(out_path, out, [&](std::ostream& o) { o << FormatConfig(base); });
        return kExitOk;
      }
      const Alphabet alphabet = AlphabetFrom(vocab_path);
      auto lm = load_lm(true);
      const CorpusSpec spec = search_corpus.Spec();
      SearchResult r = RandomSearch(spec, alphabet, *lm, SearchBounds{}, trials,
                                    search_seed, base, jobs);
      Emit(out_path, out, [&](std::ostream& o) {
        o << "# wer=" << std::fixed << std::setprecision(2) << 100.0 * r.best_wer
          << '\n'
          << FormatConfig(r.best);
      });
      for (std::size_t i = 0; i < r.trials.size(); ++i) {
        err << "trial " << i << " wer=" << std::fixed << std::setprecision(2)
            << 100.0 * r.trials[i].second << '\n';
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidConfig ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace biasdec
