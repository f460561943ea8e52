// Command-line front end: preprocess -> train -> eval -> sweep.
//
// Exit codes: 0 success, 1 usage, 2 input parse failure, 3 empty corpus,
// 4 invalid hyperparameters, 5 model/corpus archive mismatch.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "topicforge/topicforge.hpp"

namespace tf = topicforge;
namespace fs = std::filesystem;

namespace {

enum LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("TOPICFORGE_LOG");
        if (!env) return static_cast<int>(kWarn);
        const std::string v = env;
        if (v == "error") return static_cast<int>(kError);
        if (v == "warn") return static_cast<int>(kWarn);
        if (v == "info") return static_cast<int>(kInfo);
        if (v == "debug") return static_cast<int>(kDebug);
        return std::atoi(env);
    }();
    return level;
}

void log(int level, const std::string& msg) {
    if (level <= log_level()) std::fprintf(stderr, "topicforge: %s\n", msg.c_str());
}

struct PreprocessArgs {
    std::string input;
    std::string out_dir;
    std::string stopwords_file;
    std::string text_column;
    std::string id_column;
    double language_threshold = 0.2;
    std::uint32_t min_token_count = 5;
};

void run_preprocess(const PreprocessArgs& args) {
    std::vector<tf::RawDocument> raw;
    if (!args.text_column.empty()) {
        raw = tf::read_csv(args.input, args.text_column, args.id_column);
    } else {
        raw = tf::read_jsonl(args.input);
    }
    log(kInfo, "read " + std::to_string(raw.size()) + " documents from " + args.input);

    tf::PipelineConfig cfg;
    cfg.language_filter_threshold = args.language_threshold;
    if (!args.stopwords_file.empty()) {
        cfg.stopwords = tf::load_stopwords(args.stopwords_file);
        log(kInfo, "loaded " + std::to_string(cfg.stopwords.size()) + " stopwords");
    } else {
        log(kInfo, "no stopword file given; stopword removal disabled");
    }

    const tf::Corpus corpus = tf::preprocess_corpus(raw, cfg, args.min_token_count);
    tf::save_corpus_archive(corpus, args.out_dir);

    std::printf("documents in:  %zu\n", raw.size());
    std::printf("documents out: %zu (excluded %zu)\n", corpus.num_docs, corpus.excluded_docs);
    std::printf("tokens:        %zu\n", corpus.num_tokens);
    std::printf("vocabulary:    %zu\n", corpus.vocabulary.size());
    log(kInfo, "corpus archive written to " + args.out_dir);
}

struct TrainArgs {
    std::string corpus_dir;
    std::string model_dir;
    tf::LdaHyperparams hp;
    std::uint32_t top_words = 10;
};

void run_train(const TrainArgs& args) {
    const tf::Corpus corpus = tf::load_corpus_archive(args.corpus_dir);
    log(kInfo, "training " + tf::lda_label(args.hp.num_topics, args.hp.alpha, args.hp.beta) +
                   " for " + std::to_string(args.hp.iterations) + " sweeps");
    const tf::LdaModel model = tf::train(corpus, args.hp);
    tf::save_model_archive(model, args.model_dir);

    for (std::uint32_t k = 0; k < model.num_topics(); ++k) {
        std::printf("topic %u:", k);
        for (const auto& [word, count] : tf::topic_summary(model, k, args.top_words).entries)
            std::printf(" %s(%lld)", word.c_str(), static_cast<long long>(count));
        std::printf("\n");
    }
    log(kInfo, "model archive written to " + args.model_dir);
}

struct EvalArgs {
    std::string model_dir;
    std::string corpus_dir;
    std::string out_file = "eval.json";
    std::uint32_t top_words = 10;
};

void run_eval(const EvalArgs& args) {
    const tf::Corpus corpus = tf::load_corpus_archive(args.corpus_dir);
    const tf::LdaModel model = tf::load_model_archive(args.model_dir, corpus);
    const double nmi_value = tf::model_nmi(model);
    const tf::CoherenceReport report = tf::coherence_report(model, corpus, args.top_words);

    tf::detail::write_file(args.out_file, tf::eval_json(model, nmi_value, report).dump(2) + "\n");
    std::printf("nmi: %.6f\n", nmi_value);
    std::printf("coherence: %.3f \xc2\xb1 %.3f\n", report.mean_col, report.sd);
    log(kInfo, "evaluation written to " + args.out_file);
}

struct SweepArgs {
    std::string corpus_dir;
    std::string out_dir;
    tf::SweepSpec spec;
    unsigned jobs = 0;
    std::string format = "tsv";
    bool timings = false;
};

void run_sweep_cmd(const SweepArgs& args) {
    const tf::Corpus corpus = tf::load_corpus_archive(args.corpus_dir);
    const unsigned jobs = args.jobs > 0 ? args.jobs : std::max(1u, std::thread::hardware_concurrency());
    log(kInfo, "sweep over " +
                   std::to_string(args.spec.topic_numbers.size() * args.spec.alphas.size() *
                                  args.spec.betas.size() * args.spec.seeds.size()) +
                   " cells with " + std::to_string(jobs) + " jobs");
    const std::vector<tf::SweepRow> rows = tf::run_sweep(corpus, args.spec, jobs);
    for (const tf::SweepRow& row : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%s seed=%llu done in %.3fs%s", row.label.c_str(),
                      static_cast<unsigned long long>(row.seed), row.runtime_s,
                      row.failed ? (" FAILED: " + row.error).c_str() : "");
        log(kInfo, line);
    }

    fs::create_directories(args.out_dir);
    tf::detail::write_file(fs::path(args.out_dir) / "sweep.tsv",
                           tf::sweep_tsv(rows, args.timings));
    if (args.format == "markdown") {
        tf::detail::write_file(fs::path(args.out_dir) / "sweep.md",
                               tf::render_tables(rows, tf::TableFormat::markdown));
    }
    std::fputs(tf::render_tables(rows, args.format == "markdown"
                                           ? tf::TableFormat::markdown
                                           : tf::TableFormat::tsv)
                   .c_str(),
               stdout);
    log(kInfo, "sweep results written to " + args.out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short-text topic modeling: preprocessing, LDA training, evaluation, sweeps"};
    app.require_subcommand(1);

    PreprocessArgs pre;
    CLI::App* cmd_pre = app.add_subcommand("preprocess", "Build a corpus archive from raw text");
    cmd_pre->add_option("input", pre.input, "JSONL (or CSV, see --text-column) input file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_pre->add_option("output", pre.out_dir, "Corpus archive directory to write")->required();
    cmd_pre->add_option("--stopwords", pre.stopwords_file, "Stopword file, one word per line")
        ->check(CLI::ExistingFile);
    cmd_pre->add_option("--language-threshold", pre.language_threshold,
                        "Minimum fraction of recognizable words to keep a document")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd_pre->add_option("--min-token-count", pre.min_token_count,
                        "Drop words with corpus frequency below this")
        ->capture_default_str();
    cmd_pre->add_option("--text-column", pre.text_column,
                        "Treat input as CSV and read text from this column");
    cmd_pre->add_option("--id-column", pre.id_column, "CSV column holding document ids");
    cmd_pre->callback([&] { run_preprocess(pre); });

    TrainArgs tr;
    CLI::App* cmd_tr = app.add_subcommand("train", "Train an LDA model on a corpus archive");
    cmd_tr->add_option("corpus", tr.corpus_dir, "Corpus archive directory")->required();
    cmd_tr->add_option("model", tr.model_dir, "Model archive directory to write")->required();
    cmd_tr->add_option("--topics,-n", tr.hp.num_topics, "Number of topics N")->required();
    cmd_tr->add_option("--alpha", tr.hp.alpha, "Dirichlet prior on document-topic mixtures")
        ->capture_default_str();
    cmd_tr->add_option("--beta", tr.hp.beta, "Dirichlet prior on topic-word distributions")
        ->capture_default_str();
    cmd_tr->add_option("--min-token-count", tr.hp.min_token_count,
                       "Recorded alongside the model for provenance")
        ->capture_default_str();
    cmd_tr->add_option("--iters", tr.hp.iterations, "Gibbs sweeps")->capture_default_str();
    cmd_tr->add_option("--seed", tr.hp.seed, "RNG seed")->capture_default_str();
    cmd_tr->add_option("--top-words", tr.top_words, "Words to print per topic")
        ->capture_default_str();
    cmd_tr->callback([&] { run_train(tr); });

    EvalArgs ev;
    CLI::App* cmd_ev = app.add_subcommand("eval", "Score a model: NMI and topic coherence");
    cmd_ev->add_option("model", ev.model_dir, "Model archive directory")->required();
    cmd_ev->add_option("corpus", ev.corpus_dir, "Corpus archive it was trained on")->required();
    cmd_ev->add_option("output", ev.out_file, "Evaluation JSON to write")
        ->capture_default_str();
    cmd_ev->add_option("--top-words", ev.top_words, "Words per topic scored for coherence")
        ->capture_default_str();
    cmd_ev->callback([&] { run_eval(ev); });

    SweepArgs sw;
    CLI::App* cmd_sw = app.add_subcommand("sweep", "Train and score a grid of models");
    cmd_sw->add_option("corpus", sw.corpus_dir, "Corpus archive directory")->required();
    cmd_sw->add_option("output", sw.out_dir, "Directory for sweep.tsv (and sweep.md)")
        ->required();
    cmd_sw->add_option("--topic-numbers", sw.spec.topic_numbers, "Topic counts, comma separated")
        ->required()
        ->delimiter(',');
    cmd_sw->add_option("--alphas", sw.spec.alphas, "Alpha values, comma separated")
        ->delimiter(',');
    cmd_sw->add_option("--betas", sw.spec.betas, "Beta values, comma separated")->delimiter(',');
    cmd_sw->add_option("--seeds", sw.spec.seeds, "Seeds, comma separated")->delimiter(',');
    cmd_sw->add_option("--iters", sw.spec.iterations, "Gibbs sweeps per cell")
        ->capture_default_str();
    cmd_sw->add_option("--top-words", sw.spec.top_m, "Words per topic scored for coherence")
        ->capture_default_str();
    cmd_sw->add_option("--jobs", sw.jobs, "Parallel workers (default: all cores)");
    cmd_sw->add_option("--format", sw.format, "Rendered table format")
        ->check(CLI::IsMember({"tsv", "markdown"}))
        ->capture_default_str();
    cmd_sw->add_flag("--timings", sw.timings,
                     "Record measured runtimes in sweep.tsv (breaks byte reproducibility)");
    cmd_sw->callback([&] {
        if (sw.spec.alphas.empty()) sw.spec.alphas = {0.1};
        if (sw.spec.betas.empty()) sw.spec.betas = {0.01};
        if (sw.spec.seeds.empty()) sw.spec.seeds = {0};
        run_sweep_cmd(sw);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const tf::ParseError& e) {
        log(kError, e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        log(kError, e.what());
        return 2;
    } catch (const tf::EmptyCorpus& e) {
        log(kError, e.what());
        return 3;
    } catch (const tf::InvalidHyperparams& e) {
        log(kError, e.what());
        return 4;
    } catch (const tf::ArchiveMismatch& e) {
        log(kError, e.what());
        return 5;
    } catch (const tf::ArchiveError& e) {
        log(kError, e.what());
        return 2;
    } catch (const std::exception& e) {
        log(kError, e.what());
        return 1;
    }
    return 0;
}
