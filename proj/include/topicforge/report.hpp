#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "topicforge/corpus.hpp"
#include "topicforge/errors.hpp"
#include "topicforge/eval.hpp"
#include "topicforge/lda.hpp"

namespace topicforge {

struct SweepSpec {
    std::vector<std::uint32_t> topic_numbers;
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<std::uint64_t> seeds;
    std::uint32_t iterations = 1000;
    std::uint32_t top_m = 10;
};

struct SweepRow {
    std::string label;
    std::uint32_t num_topics = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    double nmi = 0.0;
    double mean_col = 0.0;
    double sd = 0.0;
    double runtime_s = 0.0;
    bool failed = false;
    std::string error;
};

// Shortest decimal form that round-trips, so 0.1 prints as "0.1".
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string lda_label(std::uint32_t num_topics, double alpha, double beta) {
    return "LDA(" + std::to_string(num_topics) + ", " + format_double(alpha) + ", " +
           format_double(beta) + ")";
}

namespace detail {

inline SweepRow run_cell(const Corpus& corpus, const SweepSpec& spec, std::uint32_t n,
                         double alpha, double beta, std::uint64_t seed) {
    SweepRow row;
    row.label = lda_label(n, alpha, beta);
    row.num_topics = n;
    row.alpha = alpha;
    row.beta = beta;
    row.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    try {
        LdaHyperparams hp;
        hp.num_topics = n;
        hp.alpha = alpha;
        hp.beta = beta;
        hp.iterations = spec.iterations;
        hp.seed = seed;
        const LdaModel model = train(corpus, hp);
        row.nmi = model_nmi(model);
        const CoherenceReport report = coherence_report(model, corpus, spec.top_m);
        row.mean_col = report.mean_col;
        row.sd = report.sd;
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace detail

// One row per (N, alpha, beta, seed), nested in that order with each list
// kept in its given sequence. Cells run independently on a worker pool and
// land in fixed slots, so the row order never depends on scheduling. A
// failing cell is recorded in place instead of aborting the sweep.
inline std::vector<SweepRow> run_sweep(const Corpus& corpus, const SweepSpec& spec,
                                       unsigned jobs = 1) {
    if (corpus.docs.empty()) throw EmptyCorpus();
    if (spec.topic_numbers.empty() || spec.alphas.empty() || spec.betas.empty() ||
        spec.seeds.empty())
        throw InvalidHyperparams("sweep grid lists must be non-empty");
    if (spec.iterations < 1) throw InvalidHyperparams("iterations must be at least 1");
    if (spec.top_m < 1) throw InvalidHyperparams("top_m must be at least 1");

    struct Cell {
        std::uint32_t n;
        double alpha;
        double beta;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::uint32_t n : spec.topic_numbers)
        for (double alpha : spec.alphas)
            for (double beta : spec.betas)
                for (std::uint64_t seed : spec.seeds) cells.push_back({n, alpha, beta, seed});

    std::vector<SweepRow> rows(cells.size());
    if (jobs < 1) jobs = 1;
    if (jobs > cells.size()) jobs = static_cast<unsigned>(cells.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const Cell& c = cells[i];
            rows[i] = detail::run_cell(corpus, spec, c.n, c.alpha, c.beta, c.seed);
        }
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                const Cell& c = cells[i];
                rows[i] = detail::run_cell(corpus, spec, c.n, c.alpha, c.beta, c.seed);
            }
        });
    for (auto& w : workers) w.join();
    return rows;
}

namespace detail {

inline std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace detail

// Wall-clock runtimes vary run to run, so by default the runtime column is
// written as 0.000 to keep sweep output byte-stable; pass include_timings
// to record the measured values instead.
inline std::string sweep_tsv(const std::vector<SweepRow>& rows, bool include_timings = false) {
    std::string out = "label\tN\talpha\tbeta\tseed\tnmi\tmean_col\tsd\truntime_s\n";
    for (const SweepRow& row : rows) {
        out += row.label;
        out += '\t';
        out += std::to_string(row.num_topics);
        out += '\t';
        out += format_double(row.alpha);
        out += '\t';
        out += format_double(row.beta);
        out += '\t';
        out += std::to_string(row.seed);
        out += '\t';
        if (row.failed) {
            out += "NA\tNA\tNA\t";
        } else {
            out += detail::fixed6(row.nmi);
            out += '\t';
            out += detail::fixed6(row.mean_col);
            out += '\t';
            out += detail::fixed6(row.sd);
            out += '\t';
        }
        out += include_timings ? detail::fixed3(row.runtime_s) : "0.000";
        out += '\n';
    }
    return out;
}

enum class TableFormat { tsv, markdown };

// Two presentation tables: model label against NMI, and model label against
// coherence as "mean ± SD", all numbers at 3 decimals.
inline std::string render_tables(const std::vector<SweepRow>& rows, TableFormat format) {
    if (rows.empty()) throw EmptyRows();
    std::string out;
    const bool md = format == TableFormat::markdown;

    if (md) {
        out += "| Model | NMI |\n| --- | --- |\n";
    } else {
        out += "label\tnmi\n";
    }
    for (const SweepRow& row : rows) {
        const std::string cell = row.failed ? "failed" : detail::fixed3(row.nmi);
        if (md)
            out += "| " + row.label + " | " + cell + " |\n";
        else
            out += row.label + "\t" + cell + "\n";
    }
    out += '\n';

    if (md) {
        out += "| Model | Coherence |\n| --- | --- |\n";
    } else {
        out += "label\tcoherence\n";
    }
    for (const SweepRow& row : rows) {
        const std::string cell =
            row.failed ? "failed"
                       : detail::fixed3(row.mean_col) + " \xc2\xb1 " + detail::fixed3(row.sd);
        if (md)
            out += "| " + row.label + " | " + cell + " |\n";
        else
            out += row.label + "\t" + cell + "\n";
    }
    return out;
}

}  // namespace topicforge
