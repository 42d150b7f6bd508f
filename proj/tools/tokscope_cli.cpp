// Command-line surface: evaluate / strr / inject / coverage / train.
// Exit codes: 0 success, 1 data or processing error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tokscope/tokscope.hpp"

namespace {

using namespace tokscope;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct SegmenterArgs {
    std::string mode = "auto";
    std::string dictionary_path;
};

void add_segmenter_flags(CLI::App* cmd, SegmenterArgs& args) {
    cmd->add_option("--segmenter", args.mode, "Segmentation policy")
        ->check(CLI::IsMember({"auto", "unicode-words", "whitespace", "han-per-char", "han-greedy-dict"}))
        ->capture_default_str();
    cmd->add_option("--dictionary", args.dictionary_path,
                    "Wordlist file for han-greedy-dict (enables it under auto)");
}

// auto routes Han spans per character, or through the dictionary when one is
// given; spaced scripts fall through to unicode-words either way.
SegmentPolicy resolve_policy(const SegmenterArgs& args, io::LoadStats& stats) {
    std::shared_ptr<const HanDictionary> dict;
    if (!args.dictionary_path.empty()) dict = io::load_dictionary(args.dictionary_path, &stats);
    if (args.mode == "auto") {
        return dict ? SegmentPolicy::han_greedy(dict) : SegmentPolicy::han_per_char();
    }
    if (args.mode == "unicode-words") return SegmentPolicy::unicode_words();
    if (args.mode == "whitespace") return SegmentPolicy::whitespace();
    if (args.mode == "han-per-char") return SegmentPolicy::han_per_char();
    if (!dict) throw Error("--segmenter han-greedy-dict requires --dictionary");
    return SegmentPolicy::han_greedy(dict);
}

WordForm parse_word_form(const std::string& s) {
    if (s == "bare") return WordForm::Bare;
    if (s == "space-prefixed") return WordForm::SpacePrefixed;
    if (s == "either") return WordForm::Either;
    throw Error("unknown word policy \"" + s + "\"");
}

void flush_warnings(const io::LoadStats& stats) {
    for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write \"" + out_path + "\"");
    out << text;
    if (!out) throw Error("write error on \"" + out_path + "\"");
}

void refuse_overwriting_input(const std::string& out_path, const std::vector<std::string>& inputs) {
    namespace fs = std::filesystem;
    const auto target = fs::weakly_canonical(fs::path(out_path));
    for (const auto& in : inputs) {
        if (fs::weakly_canonical(fs::path(in)) == target) {
            throw Error("--out-tokenizer refuses to overwrite the input file \"" + in + "\"");
        }
    }
}

std::vector<Tokenizer> load_tokenizers(const std::vector<std::string>& paths, io::LoadStats& stats) {
    std::vector<Tokenizer> toks;
    toks.reserve(paths.size());
    for (const auto& path : paths) toks.push_back(io::load_tokenizer(path, &stats));
    return toks;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateArgs {
    std::vector<std::string> tokenizer_paths;
    std::vector<std::string> corpus_paths;
    std::string corpus_format = "lines";
    std::string language;
    std::string domain = "unspecified";
    SegmenterArgs segmenter;
    unsigned threads = 1;
    std::string format = "md";
    std::string out;
};

report::Table evaluate_long_table(const std::vector<metrics::MetricCell>& cells) {
    report::Table table;
    table.columns = {"tokenizer", "corpus", "language", "domain",     "fertility",
                     "entropy_bits", "chars_per_token", "word_count", "token_count", "char_count",
                     "error"};
    for (const auto& cell : cells) {
        using report::Cell;
        if (cell.report) {
            const auto& r = *cell.report;
            table.add_row({Cell::of_text(cell.tokenizer_name), Cell::of_text(cell.corpus_name),
                           Cell::of_text(r.language), Cell::of_text(domain_name(r.domain)),
                           Cell::of_ratio(r.token_count, r.word_count), Cell::of_number(r.entropy_bits),
                           Cell::of_ratio(r.char_count, r.token_count), Cell::of_count(r.word_count),
                           Cell::of_count(r.token_count), Cell::of_count(r.char_count), Cell::empty()});
        } else {
            table.add_row({Cell::of_text(cell.tokenizer_name), Cell::of_text(cell.corpus_name),
                           Cell::empty(), Cell::empty(), Cell::empty(), Cell::empty(), Cell::empty(),
                           Cell::empty(), Cell::empty(), Cell::empty(), Cell::of_text(cell.error)});
        }
    }
    return table;
}

// language x domain rows with three metric columns per tokenizer
report::Table evaluate_wide_table(const std::vector<metrics::MetricCell>& cells,
                                  const std::vector<Corpus>& corpora,
                                  const std::vector<Tokenizer>& tokenizers) {
    report::Table table;
    table.columns = {"language", "domain", "corpus"};
    for (const auto& tok : tokenizers) {
        table.columns.push_back(tok.name() + " fertility");
        table.columns.push_back(tok.name() + " entropy");
        table.columns.push_back(tok.name() + " chars/token");
    }
    const std::size_t per_corpus = tokenizers.size();
    for (std::size_t c = 0; c < corpora.size(); ++c) {
        using report::Cell;
        std::vector<Cell> row = {Cell::of_text(corpora[c].language),
                                 Cell::of_text(domain_name(corpora[c].domain)),
                                 Cell::of_text(corpora[c].name)};
        for (std::size_t t = 0; t < per_corpus; ++t) {
            const auto& cell = cells[c * per_corpus + t];
            if (cell.report) {
                const auto& r = *cell.report;
                row.push_back(Cell::of_ratio(r.token_count, r.word_count));
                row.push_back(Cell::of_number(r.entropy_bits));
                row.push_back(Cell::of_ratio(r.char_count, r.token_count));
            } else {
                row.push_back(Cell::of_error(cell.error));
                row.push_back(Cell::empty());
                row.push_back(Cell::empty());
            }
        }
        table.add_row(std::move(row));
    }
    return table;
}

int cmd_evaluate(const EvaluateArgs& args) {
    io::LoadStats stats;
    const SegmentPolicy policy = resolve_policy(args.segmenter, stats);
    const io::CorpusFormat format = io::parse_corpus_format(args.corpus_format);
    const Domain domain = parse_domain(args.domain);

    std::vector<Tokenizer> tokenizers = load_tokenizers(args.tokenizer_paths, stats);
    std::vector<Corpus> corpora;
    corpora.reserve(args.corpus_paths.size());
    for (const auto& path : args.corpus_paths) {
        Corpus corpus = io::load_corpus(path, format, args.language, domain, &stats);
        if (corpus.language.empty()) corpus.language = corpus.name;
        for (const auto& doc : corpus.documents) {
            if (classify_script(doc) != ScriptTag::Spaced) {
                std::cerr << "note: corpus \"" << corpus.name << "\" contains Han text; word units come "
                          << "from the " << segment_mode_name(policy.mode)
                          << " segmenter and per-word metrics depend on that choice\n";
                break;
            }
        }
        corpora.push_back(std::move(corpus));
    }
    flush_warnings(stats);

    std::vector<const Tokenizer*> tok_ptrs;
    for (const auto& t : tokenizers) tok_ptrs.push_back(&t);
    std::vector<const Corpus*> corpus_ptrs;
    for (const auto& c : corpora) corpus_ptrs.push_back(&c);

    const auto cells = metrics::compare_metrics(tok_ptrs, corpus_ptrs, policy, args.threads);
    const report::Format fmt = report::parse_format(args.format);
    const report::Table table = fmt == report::Format::Markdown
                                    ? evaluate_wide_table(cells, corpora, tokenizers)
                                    : evaluate_long_table(cells);
    emit(report::render(table, fmt), args.out);

    for (const auto& cell : cells) {
        if (!cell.report) {
            std::cerr << "error: " << cell.tokenizer_name << " x " << cell.corpus_name << ": "
                      << cell.error << "\n";
            return kExitData;
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// strr
// ---------------------------------------------------------------------------

struct StrrArgs {
    std::vector<std::string> tokenizer_paths;
    std::string wordlist_path;
    std::string word_policy = "bare";
    bool failures = false;
    std::string format = "md";
    std::string out;
};

struct StrrRun {
    std::vector<std::string> policies;
    std::vector<const WordList*> lists;
    std::vector<Tokenizer> tokenizers;
    // cells[policy][list * ntok + tok]
    std::vector<std::vector<metrics::StrrCell>> cells;
};

std::string strr_markdown(const StrrRun& run, bool with_failures) {
    report::Table table;
    table.columns = {"language", "policy"};
    for (const auto& tok : run.tokenizers) table.columns.push_back(tok.name());
    for (std::size_t l = 0; l < run.lists.size(); ++l) {
        for (std::size_t p = 0; p < run.policies.size(); ++p) {
            using report::Cell;
            std::vector<Cell> row = {Cell::of_text(run.lists[l]->language), Cell::of_text(run.policies[p])};
            for (std::size_t t = 0; t < run.tokenizers.size(); ++t) {
                const auto& cell = run.cells[p][l * run.tokenizers.size() + t];
                if (cell.report) {
                    row.push_back(Cell::of_number(cell.report->strr));
                } else {
                    row.push_back(Cell::of_error(cell.error));
                }
            }
            table.add_row(std::move(row));
        }
    }
    std::string out = report::to_markdown(table);
    if (with_failures) {
        for (const auto& per_policy : run.cells) {
            for (const auto& cell : per_policy) {
                if (!cell.report || cell.report->failures.empty()) continue;
                out += "\nfailures: " + cell.tokenizer_name + " / " + cell.report->language + "\n";
                for (const auto& f : cell.report->failures) {
                    out += "  " + f.word + " -> " + std::to_string(f.token_count) + " tokens\n";
                }
            }
        }
    }
    return out;
}

report::Table strr_long_table(const StrrRun& run, bool with_failures) {
    report::Table table;
    table.columns = {"tokenizer", "language", "policy", "n", "retained", "strr", "error"};
    if (with_failures) table.columns.push_back("failures");
    for (std::size_t p = 0; p < run.policies.size(); ++p) {
        for (const auto& cell : run.cells[p]) {
            using report::Cell;
            std::vector<Cell> row;
            if (cell.report) {
                const auto& r = *cell.report;
                row = {Cell::of_text(cell.tokenizer_name), Cell::of_text(r.language),
                       Cell::of_text(run.policies[p]), Cell::of_count(static_cast<std::int64_t>(r.n)),
                       Cell::of_count(static_cast<std::int64_t>(r.retained)),
                       Cell::of_number(r.strr), Cell::empty()};
                if (with_failures) {
                    std::string joined;
                    for (const auto& f : r.failures) {
                        if (!joined.empty()) joined += " ";
                        joined += f.word + ":" + std::to_string(f.token_count);
                    }
                    row.push_back(Cell::of_text(joined));
                }
            } else {
                row = {Cell::of_text(cell.tokenizer_name), Cell::of_text(cell.list_name),
                       Cell::of_text(run.policies[p]), Cell::empty(), Cell::empty(), Cell::empty(),
                       Cell::of_text(cell.error)};
                if (with_failures) row.push_back(Cell::empty());
            }
            table.add_row(std::move(row));
        }
    }
    return table;
}

// grouped-bar series: one series per (language, policy), one value per tokenizer
std::string strr_json(const StrrRun& run, bool with_failures) {
    nlohmann::ordered_json root;
    root["metric"] = "strr";
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (const auto& tok : run.tokenizers) labels.push_back(tok.name());
    root["labels"] = std::move(labels);
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    for (std::size_t l = 0; l < run.lists.size(); ++l) {
        for (std::size_t p = 0; p < run.policies.size(); ++p) {
            nlohmann::ordered_json entry;
            entry["name"] = run.lists[l]->language +
                            (run.policies.size() > 1 ? " (" + run.policies[p] + ")" : "");
            entry["language"] = run.lists[l]->language;
            entry["policy"] = run.policies[p];
            nlohmann::ordered_json data = nlohmann::ordered_json::array();
            for (std::size_t t = 0; t < run.tokenizers.size(); ++t) {
                const auto& cell = run.cells[p][l * run.tokenizers.size() + t];
                if (cell.report) {
                    data.push_back(cell.report->strr);
                } else {
                    data.push_back(nullptr);
                }
            }
            entry["data"] = std::move(data);
            series.push_back(std::move(entry));
        }
    }
    root["series"] = std::move(series);
    root["rows"] = report::to_json(strr_long_table(run, with_failures));
    return root.dump(2) + "\n";
}

int cmd_strr(const StrrArgs& args) {
    io::LoadStats stats;
    StrrRun run;
    run.tokenizers = load_tokenizers(args.tokenizer_paths, stats);

    const io::LoadedWordList loaded = io::load_wordlist(args.wordlist_path, &stats);
    if (const auto* single = std::get_if<WordList>(&loaded)) {
        run.lists = {single};
    } else {
        const auto* parallel = std::get_if<ParallelWordList>(&loaded);
        run.lists = {&parallel->source, &parallel->target};
    }
    flush_warnings(stats);

    if (args.word_policy == "all-policies") {
        run.policies = {"bare", "space-prefixed", "either"};
    } else {
        run.policies = {args.word_policy};
    }

    std::vector<const Tokenizer*> tok_ptrs;
    for (const auto& t : run.tokenizers) tok_ptrs.push_back(&t);
    for (const auto& policy : run.policies) {
        run.cells.push_back(metrics::compare_strr(tok_ptrs, run.lists, parse_word_form(policy)));
    }

    const report::Format fmt = report::parse_format(args.format);
    switch (fmt) {
        case report::Format::Markdown:
            emit(strr_markdown(run, args.failures), args.out);
            break;
        case report::Format::Csv:
            emit(report::to_csv(strr_long_table(run, args.failures)), args.out);
            break;
        case report::Format::Json:
            emit(strr_json(run, args.failures), args.out);
            break;
    }

    for (const auto& per_policy : run.cells) {
        for (const auto& cell : per_policy) {
            if (!cell.report) {
                std::cerr << "error: " << cell.tokenizer_name << " x " << cell.list_name << ": "
                          << cell.error << "\n";
                return kExitData;
            }
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// inject
// ---------------------------------------------------------------------------

struct InjectArgs {
    std::string tokenizer_path;
    std::string wordlist_path;
    std::string out_tokenizer;
    std::string word_policy = "bare";
    std::string plan_out;
};

int cmd_inject(const InjectArgs& args) {
    refuse_overwriting_input(args.out_tokenizer, {args.tokenizer_path, args.wordlist_path});

    io::LoadStats stats;
    const Tokenizer tok = io::load_tokenizer(args.tokenizer_path, &stats);
    const io::LoadedWordList loaded = io::load_wordlist(args.wordlist_path, &stats);
    const auto* list = std::get_if<WordList>(&loaded);
    if (!list) {
        throw Error(args.wordlist_path +
                    ": inject expects a single-column wordlist, not a parallel one");
    }
    flush_warnings(stats);

    const pipeline::InjectionResult result = pipeline::inject(tok, list->words, parse_word_form(args.word_policy));
    io::save_tokenizer(result.tokenizer, args.out_tokenizer);

    const pipeline::InjectionPlan& plan = result.plan;
    std::printf("injected %zu of %zu candidate word(s); vocab size %zu -> %zu\n", plan.injected.size(),
                plan.candidates.size(), tok.vocab_size(), result.tokenizer.vocab_size());
    std::printf("strr over the wordlist: %.2f -> %.2f\n", plan.strr_before, plan.strr_after);
    for (const auto& [word, reason] : plan.rejected) {
        std::cerr << "warning: not injected: \"" << word << "\": " << reason << "\n";
    }
    std::printf("wrote %s\n", args.out_tokenizer.c_str());
    std::printf("\nnext steps for the expanded tokenizer:\n");
    std::printf("  1. continue pretraining the model on multilingual text so the new tokens learn embeddings\n");
    std::printf("  2. instruction-tune on multilingual data to validate the new tokens downstream\n");

    if (!args.plan_out.empty()) {
        nlohmann::ordered_json j;
        j["candidates"] = plan.candidates;
        j["injected"] = plan.injected;
        j["strr_before"] = plan.strr_before;
        j["strr_after"] = plan.strr_after;
        std::ofstream out(args.plan_out, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write \"" + args.plan_out + "\"");
        out << j.dump(2) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// coverage
// ---------------------------------------------------------------------------

struct CoverageArgs {
    std::string corpus_path;
    std::string corpus_format = "lines";
    double target = 0.85;
    SegmenterArgs segmenter;
    std::string out;
};

int cmd_coverage(const CoverageArgs& args) {
    io::LoadStats stats;
    const SegmentPolicy policy = resolve_policy(args.segmenter, stats);
    const Corpus corpus =
        io::load_corpus(args.corpus_path, io::parse_corpus_format(args.corpus_format), "", Domain::Unspecified, &stats);
    flush_warnings(stats);

    const pipeline::CoreVocabulary core = pipeline::core_vocabulary(corpus, policy, args.target);

    std::string csv = "rank,word,count,cumulative_coverage\n";
    char buf[64];
    for (std::size_t i = 0; i < core.curve.ranked_words.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", core.curve.cumulative_coverage[i]);
        csv += std::to_string(i + 1) + "," + report::detail::csv_quote(core.curve.ranked_words[i]) + "," +
               std::to_string(core.curve.counts[i]) + "," + buf + "\n";
    }
    emit(csv, args.out);

    std::snprintf(buf, sizeof(buf), "%.4f", core.achieved_coverage);
    const std::string summary = "core vocabulary: " + std::to_string(core.words.size()) + " of " +
                                std::to_string(core.curve.ranked_words.size()) + " distinct words reach " +
                                buf + " coverage (target " + std::to_string(args.target) + ")\n";
    if (args.out.empty()) {
        std::cerr << summary;
    } else {
        std::cout << summary;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainArgs {
    std::string corpus_path;
    std::string corpus_format = "lines";
    std::size_t vocab_size = 0;
    std::string out_tokenizer;
    bool char_level = false;
    std::string name = "trained-bpe";
    SegmenterArgs segmenter;
};

int cmd_train(const TrainArgs& args) {
    refuse_overwriting_input(args.out_tokenizer, {args.corpus_path});

    io::LoadStats stats;
    const SegmentPolicy policy = resolve_policy(args.segmenter, stats);
    const Corpus corpus =
        io::load_corpus(args.corpus_path, io::parse_corpus_format(args.corpus_format), "", Domain::Unspecified, &stats);
    flush_warnings(stats);

    const pipeline::TrainResult result =
        pipeline::train_bpe(corpus, policy, args.vocab_size, !args.char_level, args.name);
    if (!result.target_reached) {
        std::cerr << "warning: stopped at vocab size " << result.tokenizer.vocab_size()
                  << " (no adjacent pair occurs twice); target was " << args.vocab_size << "\n";
    }
    io::save_tokenizer(result.tokenizer, args.out_tokenizer);
    std::printf("trained %s: vocab size %zu, %zu merge(s); wrote %s\n", result.tokenizer.name().c_str(),
                result.tokenizer.vocab_size(), result.merge_count, args.out_tokenizer.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tokenizer evaluation toolkit: fertility, subword entropy, chars/token and "
                 "single-token retention across languages, plus core-vocabulary analysis, "
                 "vocabulary injection and a minimal BPE trainer."};
    app.require_subcommand(1);

    EvaluateArgs ev;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Corpus metrics per (tokenizer, corpus)");
    evaluate->add_option("--tokenizer", ev.tokenizer_paths, "Tokenizer JSON file (repeatable)")->required();
    evaluate->add_option("--corpus", ev.corpus_paths, "Corpus file (repeatable)")->required();
    evaluate->add_option("--corpus-format", ev.corpus_format, "lines or jsonl")->capture_default_str();
    evaluate->add_option("--language", ev.language, "Language tag for the corpora");
    evaluate->add_option("--domain", ev.domain, "formal, informal or unspecified")->capture_default_str();
    evaluate->add_option("--threads", ev.threads, "Worker threads for metric counting")->capture_default_str();
    evaluate->add_option("--format", ev.format, "md, csv or json")->capture_default_str();
    evaluate->add_option("--out", ev.out, "Write the report here instead of stdout");
    add_segmenter_flags(evaluate, ev.segmenter);

    StrrArgs st;
    CLI::App* strr_cmd = app.add_subcommand("strr", "Single-token retention over a wordlist");
    strr_cmd->add_option("--tokenizer", st.tokenizer_paths, "Tokenizer JSON file (repeatable)")->required();
    strr_cmd->add_option("--wordlist", st.wordlist_path, "Single-column or two-column parallel wordlist")
        ->required();
    strr_cmd->add_option("--word-policy", st.word_policy, "bare, space-prefixed, either or all-policies")
        ->check(CLI::IsMember({"bare", "space-prefixed", "either", "all-policies"}))
        ->capture_default_str();
    strr_cmd->add_flag("--failures", st.failures, "List words that are not single tokens");
    strr_cmd->add_option("--format", st.format, "md, csv or json")->capture_default_str();
    strr_cmd->add_option("--out", st.out, "Write the report here instead of stdout");

    InjectArgs in;
    CLI::App* inject_cmd = app.add_subcommand("inject", "Add missing wordlist entries as added tokens");
    inject_cmd->add_option("--tokenizer", in.tokenizer_path, "Tokenizer JSON file")->required();
    inject_cmd->add_option("--wordlist", in.wordlist_path, "Single-column wordlist")->required();
    inject_cmd->add_option("--out-tokenizer", in.out_tokenizer, "Where to write the expanded tokenizer")
        ->required();
    inject_cmd->add_option("--word-policy", in.word_policy, "bare, space-prefixed or either")
        ->check(CLI::IsMember({"bare", "space-prefixed", "either"}))
        ->capture_default_str();
    inject_cmd->add_option("--plan-out", in.plan_out, "Write the injection plan as JSON");

    CoverageArgs cov;
    CLI::App* coverage_cmd = app.add_subcommand("coverage", "Frequency-rank coverage curve of a corpus");
    coverage_cmd->add_option("--corpus", cov.corpus_path, "Corpus file")->required();
    coverage_cmd->add_option("--corpus-format", cov.corpus_format, "lines or jsonl")->capture_default_str();
    coverage_cmd->add_option("--target", cov.target, "Coverage target in (0, 1]")->capture_default_str();
    coverage_cmd->add_option("--out", cov.out, "Write the CSV here instead of stdout");
    add_segmenter_flags(coverage_cmd, cov.segmenter);

    TrainArgs tr;
    CLI::App* train_cmd = app.add_subcommand("train", "Train a BPE tokenizer on a corpus");
    train_cmd->add_option("--corpus", tr.corpus_path, "Corpus file")->required();
    train_cmd->add_option("--corpus-format", tr.corpus_format, "lines or jsonl")->capture_default_str();
    train_cmd->add_option("--vocab-size", tr.vocab_size, "Target vocabulary size")->required();
    train_cmd->add_option("--out-tokenizer", tr.out_tokenizer, "Where to write the tokenizer")->required();
    train_cmd->add_flag("--char-level", tr.char_level, "Character symbols instead of the byte alphabet");
    train_cmd->add_option("--name", tr.name, "Tokenizer display name")->capture_default_str();
    add_segmenter_flags(train_cmd, tr.segmenter);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return kExitUsage;
    }

    try {
        if (*evaluate) return cmd_evaluate(ev);
        if (*strr_cmd) return cmd_strr(st);
        if (*inject_cmd) return cmd_inject(in);
        if (*coverage_cmd) return cmd_coverage(cov);
        if (*train_cmd) return cmd_train(tr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
