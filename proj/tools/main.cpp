#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "temposum/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string input;
    std::string cohort;
    std::string date_col = "date";
    std::string attrs;
    std::string granularity = "week";
    int tw_len = 7;
    int alphabet = 5;
    double minsup = 0.2;
    double minconf = 0.8;
    std::vector<std::string> goal_flags;
    std::string guideline_file;
    std::string vocab_file;
    std::string bins_file;
    std::string protoforms = "all";
    unsigned seed = 42;
    std::string out_file;
    std::string provenance_dir;
    std::string format = "jsonl";
    int threads = 1;
    int min_days = 0;
};

void add_shared_flags(CLI::App& cmd, Options& o) {
    cmd.add_option("--date-col", o.date_col, "Name of the date column")->capture_default_str();
    cmd.add_option("--attrs", o.attrs, "Comma-separated attribute columns")->required();
    cmd.add_option("--granularity", o.granularity, "Window kind: day, week, month, or none")
        ->check(CLI::IsMember({"day", "week", "month", "none"}))
        ->capture_default_str();
    cmd.add_option("--tw-len", o.tw_len, "Window length in days (month defaults to 30)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--alphabet", o.alphabet, "Number of discretization levels")
        ->check(CLI::Range(2, 26))
        ->capture_default_str();
    cmd.add_option("--minsup", o.minsup, "Minimum pattern support")->capture_default_str();
    cmd.add_option("--minconf", o.minconf, "Minimum rule confidence")->capture_default_str();
    cmd.add_option("--goal", o.goal_flags,
                   "Goal like \"calorie intake<=2000:low\"; repeatable, also attr>=v:label "
                   "and attr=lo..hi:label");
    cmd.add_option("--guideline", o.guideline_file,
                   "JSON guideline file with name and per-attribute [lo, hi] ranges");
    cmd.add_option("--vocab", o.vocab_file,
                   "Vocabulary JSON (defaults to $TEMPOSUM_VOCAB, then built-in)");
    cmd.add_option("--bins", o.bins_file, "Raw-range override JSON: attribute -> bins");
    cmd.add_option("--protoforms", o.protoforms, "Comma list of summary types, or 'all'")
        ->capture_default_str();
    cmd.add_option("--seed", o.seed, "Sampling seed for the clustering threshold")
        ->capture_default_str();
    cmd.add_option("--out", o.out_file, "Output file (default: stdout)");
    cmd.add_option("--provenance-dir", o.provenance_dir,
                   "Write one chart JSON per summary into this directory");
    cmd.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"jsonl", "table"}))
        ->capture_default_str();
    cmd.add_option("--threads", o.threads, "Worker threads; output does not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) temposum::fail(temposum::ErrorCode::BadConfig, "cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        temposum::fail(temposum::ErrorCode::BadConfig,
                       "bad JSON in '" + path + "': " + e.what());
    }
}

std::vector<std::string> split_attr_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty())
        temposum::fail(temposum::ErrorCode::BadConfig, "--attrs names no columns");
    return out;
}

temposum::Granularity pick_granularity(const Options& o, bool tw_len_given) {
    if (o.granularity == "day") return temposum::Granularity::day();
    if (o.granularity == "none") return temposum::Granularity::full_range();
    if (o.granularity == "month")
        return temposum::Granularity::month(tw_len_given ? o.tw_len : 30);
    return temposum::Granularity::week(o.tw_len);
}

temposum::PipelineSetup build_setup(const Options& o, bool tw_len_given) {
    temposum::PipelineSetup setup;
    if (!o.vocab_file.empty()) {
        setup.vocab = temposum::vocabulary_from_json(parse_json_file(o.vocab_file));
    } else if (const char* env = std::getenv("TEMPOSUM_VOCAB"); env != nullptr && *env != '\0') {
        setup.vocab = temposum::vocabulary_from_json(parse_json_file(env));
    }
    if (!o.bins_file.empty())
        for (auto& [attr, scheme] : temposum::bin_overrides_from_json(parse_json_file(o.bins_file)))
            setup.vocab.raw_schemes[attr] = std::move(scheme);

    setup.config.granularity = pick_granularity(o, tw_len_given);
    setup.config.alphabet_size = o.alphabet;
    setup.config.min_support = o.minsup;
    setup.config.min_confidence = o.minconf;
    setup.config.rng_seed = o.seed;
    for (const auto& g : o.goal_flags) setup.config.goals.push_back(temposum::parse_goal_flag(g));
    if (!o.guideline_file.empty())
        setup.config.guideline = temposum::guideline_from_json(parse_json_file(o.guideline_file));
    setup.keep = temposum::parse_protoform_list(o.protoforms);
    setup.finalize();
    return setup;
}

/// Write the rows (and charts, when a run context is available) and return
/// the process exit code. No summaries is a normal empty result.
int emit(const std::vector<temposum::Summary>& summaries, const temposum::UserRun* run,
         const Options& o) {
    std::vector<std::optional<std::string>> chart_paths(summaries.size());
    if (!o.provenance_dir.empty() && run != nullptr) {
        for (std::size_t i = 0; i < summaries.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "summary_%03zu.json", i);
            const fs::path p = fs::path(o.provenance_dir) / name;
            temposum::write_chart(temposum::chart_for(summaries[i], run->ctx), p);
            chart_paths[i] = p.generic_string();
        }
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.out_file.empty()) {
        file.open(o.out_file, std::ios::binary | std::ios::trunc);
        if (!file)
            temposum::fail(temposum::ErrorCode::IoError,
                           "cannot open output file '" + o.out_file + "'");
        out = &file;
    }
    if (o.format == "table") {
        *out << temposum::table_format(summaries);
    } else {
        for (std::size_t i = 0; i < summaries.size(); ++i)
            *out << temposum::summary_row(summaries[i], chart_paths[i]).dump() << '\n';
    }
    out->flush();
    if (!o.out_file.empty() && !file)
        temposum::fail(temposum::ErrorCode::IoError, "short write to '" + o.out_file + "'");
    return 0;
}

int cmd_summarize(const Options& o, bool tw_len_given) {
    const temposum::PipelineSetup setup = build_setup(o, tw_len_given);
    temposum::Dataset data =
        temposum::load_csv(o.input, o.date_col, split_attr_list(o.attrs));
    const auto run = temposum::prepare_user(std::move(data), setup, o.threads);
    for (const auto& note : run->notes) std::cerr << note << '\n';
    const auto summaries = temposum::run_user(*run, setup, o.threads);
    return emit(summaries, run.get(), o);
}

int cmd_group(const Options& o, bool tw_len_given) {
    const temposum::PipelineSetup setup = build_setup(o, tw_len_given);
    temposum::CohortLoad cohort = temposum::load_cohort(
        o.cohort, "*.csv", o.date_col, split_attr_list(o.attrs), o.min_days);
    for (const auto& id : cohort.excluded)
        std::cerr << "excluded user " << id << ": fewer than " << o.min_days
                  << " logged days\n";
    const temposum::GroupResult result =
        temposum::run_group(std::move(cohort.users), setup, o.threads);
    for (const auto& user : result.users)
        for (const auto& note : user->notes) std::cerr << note << '\n';
    return emit(result.group, nullptr, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temposum: natural-language summaries of time-series CSV logs"};
    app.require_subcommand(1);
    Options o;

    CLI::App* sum = app.add_subcommand("summarize", "Summarize one user's log");
    sum->add_option("--input", o.input, "CSV file with a date column")->required();
    add_shared_flags(*sum, o);

    CLI::App* grp = app.add_subcommand("group", "Aggregate summaries across a cohort");
    grp->add_option("--cohort", o.cohort, "Directory of per-user CSV files")->required();
    grp->add_option("--min-days", o.min_days, "Exclude users logging fewer days than this")
        ->capture_default_str();
    add_shared_flags(*grp, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sum)) return cmd_summarize(o, sum->count("--tw-len") > 0);
        return cmd_group(o, grp->count("--tw-len") > 0);
    } catch (const temposum::Error& e) {
        std::cerr << "temposum: " << e.what() << '\n';
        return e.code() == temposum::ErrorCode::BadConfig ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "temposum: " << e.what() << '\n';
        return 3;
    }
}
