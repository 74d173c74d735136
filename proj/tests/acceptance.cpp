/// Acceptance gate for the summarization toolkit. Runs ten checks against
/// the library and the built CLI, printing one pass/fail line each.
///
/// Usage: acceptance <cli-binary> <data-dir>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "temposum/pipeline.hpp"

using namespace temposum;
namespace fs = std::filesystem;

namespace {

std::string g_detail;

bool fail_with(const std::string& msg) {
    if (g_detail.empty()) g_detail = msg;
    return false;
}

bool near(double got, double want, double tol, const char* what) {
    if (std::fabs(got - want) <= tol) return true;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: got %.6f, want %.6f +- %g", what, got, want, tol);
    return fail_with(buf);
}

// ---- CLI plumbing -----------------------------------------------------------

struct CliRunner {
    std::string cli;
    fs::path data;
    fs::path work;

    int run(const std::string& args, const std::string& out_name) const {
        const std::string cmd = "\"" + cli + "\" " + args + " > \"" +
                                (work / out_name).string() + "\" 2> \"" +
                                (work / (out_name + ".err")).string() + "\"";
        const int status = std::system(cmd.c_str());
        if (status == -1 || !WIFEXITED(status)) return -1;
        return WEXITSTATUS(status);
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(work / name, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::vector<nlohmann::json> rows(const std::string& name) const {
        std::vector<nlohmann::json> out;
        std::ifstream in(work / name);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) out.push_back(nlohmann::json::parse(line));
        return out;
    }
};

// ---- 1. quantifier memberships ---------------------------------------------

const Quantifier& named_quantifier(const std::vector<Quantifier>& qs, const char* name) {
    for (const auto& q : qs)
        if (q.name == name) return q;
    std::fprintf(stderr, "missing quantifier %s\n", name);
    std::exit(2);
}

bool check_quantifiers() {
    const auto qs = default_quantifiers();
    if (!near(named_quantifier(qs, "some of the").membership(2.0 / 7.0), 0.93, 0.01,
              "some at 2/7"))
        return false;
    if (!near(named_quantifier(qs, "half of the").membership(0.529), 0.71, 0.01,
              "half at 0.529"))
        return false;
    const double most = named_quantifier(qs, "most of the").membership(0.86);
    if (most != 1.0) return fail_with("most at 0.86 is not exactly 1");
    return true;
}

// ---- 2. length quality ------------------------------------------------------

bool check_length_quality() {
    auto t6 = [](int k) {
        MetricBasis b;
        b.summarizer_count = k;
        return length_quality(b);
    };
    if (t6(1) != 1.0) return fail_with("T6(1) != 1");
    if (t6(2) != 0.5) return fail_with("T6(2) != 0.5");
    if (t6(3) != 0.25) return fail_with("T6(3) != 0.25");
    if (t6(4) != 0.125) return fail_with("T6(4) != 0.125");
    return near(t6(10), 0.00195, 0.0001, "T6(10)");
}

// ---- 3. coverage S-curve ----------------------------------------------------

bool check_coverage_curve() {
    auto t5 = [](double r) {
        MetricBasis b;
        b.coverage_ratio = r;
        return *degree_of_coverage(b, MetricOptions{});
    };
    if (t5(0.02) != 0.0) return fail_with("T5(0.02) != 0");
    if (t5(0.15) != 1.0) return fail_with("T5(0.15) != 1");
    if (!near(t5(0.085), 0.5, 1e-9, "T5 at the midpoint")) return false;

    double prev = t5(0.0);
    for (int i = 1; i <= 10000; ++i) {
        const double cur = t5(i / 10000.0);
        if (cur + 1e-15 < prev) return fail_with("T5 not monotone at r=" + std::to_string(i));
        if (std::fabs(cur - prev) > 0.005)
            return fail_with("T5 jump at r=" + std::to_string(i));
        prev = cur;
    }
    return true;
}

// ---- 4. symbolic discretization --------------------------------------------

bool check_sax() {
    const auto bp = gaussian_breakpoints(5);
    const double oracle[4] = {-0.8416212335729143, -0.2533471031357997, 0.2533471031357997,
                              0.8416212335729143};
    if (bp.size() != 4) return fail_with("breakpoint count");
    for (int i = 0; i < 4; ++i)
        if (std::fabs(bp[static_cast<std::size_t>(i)] - oracle[i]) >= 1e-4)
            return fail_with("breakpoint " + std::to_string(i) + " off oracle");

    TimeSeries ts;
    ts.attribute = ts.display = "x";
    // Box-Muller over mt19937_64 keeps the draws identical across standard
    // libraries, unlike std::normal_distribution.
    std::mt19937_64 rng(20240101);
    auto unit = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; };
    CivilDate d{2018, 1, 1};
    std::vector<double> values;
    while (values.size() < 10000) {
        const double u1 = unit(), u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        values.push_back(5.0 + 2.0 * r * std::cos(2.0 * M_PI * u2));
        if (values.size() < 10000)
            values.push_back(5.0 + 2.0 * r * std::sin(2.0 * M_PI * u2));
    }
    for (double v : values) {
        ts.points.push_back({d, v});
        d = add_days(d, 1);
    }
    const Discretized disc = symbolize(ts, Granularity::full_range(), sax_scheme(5));
    std::array<int, 5> freq{};
    for (const auto& sym : disc.days.symbols) freq[static_cast<std::size_t>(sym.letter)]++;
    for (int f : freq) {
        const double share = f / 10000.0;
        if (share < 0.17 || share > 0.23)
            return fail_with("letter share " + std::to_string(share) + " outside 0.20 +- 0.03");
    }

    const auto z1 = z_normalize(values);
    const auto z2 = z_normalize(z1.values);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::fabs(z2.values[i] - z1.values[i]) > 1e-9)
            return fail_with("z-normalize not idempotent within 1e-9");
    return true;
}

// ---- 5. mining vs. brute force ---------------------------------------------

/// Patterns encoded two bits per letter, grouped by length; codes sort in the
/// same lexicographic order the miner reports.
struct BruteResult {
    std::vector<std::vector<std::pair<std::uint32_t, long long>>> by_len;
    std::vector<long long> positions;
};

BruteResult brute_mine(const std::string& s, int max_len, long long sup_num,
                       long long sup_den) {
    const int n = static_cast<int>(s.size());
    BruteResult r;
    r.by_len.resize(static_cast<std::size_t>(max_len) + 1);
    r.positions.assign(static_cast<std::size_t>(max_len) + 1, 0);
    std::vector<std::uint32_t> codes;
    for (int len = 1; len <= max_len && len <= n; ++len) {
        const int pos = n - len + 1;
        r.positions[static_cast<std::size_t>(len)] = pos;
        codes.clear();
        std::uint32_t code = 0;
        const std::uint32_t mask = (len * 2 >= 32) ? 0xffffffffu : ((1u << (len * 2)) - 1u);
        for (int i = 0; i < n; ++i) {
            code = ((code << 2) | static_cast<std::uint32_t>(s[static_cast<std::size_t>(i)] -
                                                             'a')) &
                   mask;
            if (i >= len - 1) codes.push_back(code);
        }
        std::sort(codes.begin(), codes.end());
        auto& out = r.by_len[static_cast<std::size_t>(len)];
        for (std::size_t i = 0; i < codes.size();) {
            std::size_t j = i;
            while (j < codes.size() && codes[j] == codes[i]) ++j;
            const auto count = static_cast<long long>(j - i);
            if (count * sup_den >= sup_num * pos) out.emplace_back(codes[i], count);
            i = j;
        }
    }
    return r;
}

std::uint32_t code_of_tokens(const std::vector<std::string>& tokens) {
    std::uint32_t code = 0;
    for (const auto& t : tokens) code = (code << 2) | static_cast<std::uint32_t>(t[0] - 'a');
    return code;
}

long long lookup(const std::vector<std::pair<std::uint32_t, long long>>& v, std::uint32_t code) {
    const auto it = std::lower_bound(v.begin(), v.end(), code,
                                     [](const auto& p, std::uint32_t c) { return p.first < c; });
    return (it != v.end() && it->first == code) ? it->second : -1;
}

bool mining_matches(const std::string& s, int max_len, long long sup_num, long long sup_den,
                    double min_support) {
    const auto got = mine_frequent(s, max_len, min_support);
    const auto want = brute_mine(s, max_len, sup_num, sup_den);

    std::size_t want_total = 0;
    for (const auto& v : want.by_len) want_total += v.size();
    if (got.size() != want_total) return fail_with("pattern count mismatch on " + s);
    for (const auto& p : got) {
        const auto len = p.tokens.size();
        if (len >= want.by_len.size()) return fail_with("overlong pattern on " + s);
        const long long c = lookup(want.by_len[len], code_of_tokens(p.tokens));
        if (c != p.count) return fail_with("pattern count wrong on " + s);
        if (p.positions != want.positions[len]) return fail_with("positions wrong on " + s);
    }

    // Rules: every split of a kept pattern whose prefix was itself kept.
    struct Key {
        std::size_t plen, slen;
        std::uint32_t pcode, scode;
        bool operator<(const Key& o) const {
            if (plen != o.plen) return plen < o.plen;
            if (pcode != o.pcode) return pcode < o.pcode;
            if (slen != o.slen) return slen < o.slen;
            return scode < o.scode;
        }
        bool operator==(const Key& o) const {
            return plen == o.plen && slen == o.slen && pcode == o.pcode && scode == o.scode;
        }
    };
    std::vector<std::pair<Key, std::array<long long, 3>>> expect;
    for (std::size_t len = 2; len < want.by_len.size(); ++len)
        for (const auto& [code, count] : want.by_len[len])
            for (std::size_t k = 1; k < len; ++k) {
                const std::uint32_t pcode = code >> (2 * (len - k));
                const long long pc = lookup(want.by_len[k], pcode);
                if (pc < 0) continue;  // prefix fell below support
                const std::uint32_t scode =
                    code & ((len - k) * 2 >= 32 ? 0xffffffffu
                                                : ((1u << ((len - k) * 2)) - 1u));
                expect.push_back(
                    {{k, len - k, pcode, scode}, {count, pc, want.positions[len]}});
            }
    std::sort(expect.begin(), expect.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const auto rules = rules_from_patterns(got, 0.0);
    if (rules.size() != expect.size()) return fail_with("rule count mismatch on " + s);
    std::vector<std::pair<Key, const SequenceRule*>> have;
    have.reserve(rules.size());
    for (const auto& r : rules)
        have.push_back({{r.prefix.size(), r.suffix.size(), code_of_tokens(r.prefix),
                         code_of_tokens(r.suffix)},
                        &r});
    std::sort(have.begin(), have.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < have.size(); ++i) {
        if (!(have[i].first == expect[i].first)) return fail_with("rule set differs on " + s);
        const auto& r = *have[i].second;
        const auto& e = expect[i].second;
        if (r.pattern_count != e[0] || r.prefix_count != e[1] || r.positions != e[2])
            return fail_with("rule counts differ on " + s);
        const double conf = static_cast<double>(e[0]) / static_cast<double>(e[1]);
        if (std::fabs(r.confidence() - conf) > 1e-12)
            return fail_with("confidence differs on " + s);
    }
    return true;
}

bool check_mining() {
    // Exhaustive, zero support: total equivalence on every sequence up to 9.
    std::vector<std::string> frontier{""};
    for (int len = 1; len <= 9; ++len) {
        std::vector<std::string> next;
        next.reserve(frontier.size() * 3);
        for (const auto& s : frontier)
            for (char c : {'a', 'b', 'c'}) next.push_back(s + c);
        frontier = std::move(next);
        for (const auto& s : frontier)
            if (!mining_matches(s, len, 0, 1, 0.0)) return false;
    }
    // Exhaustive 10..12 at the production pattern cap, positive support.
    std::string s(12, 'a');
    for (int len = 10; len <= 12; ++len) {
        s.resize(static_cast<std::size_t>(len));
        long long span = 1;
        for (int i = 0; i < len; ++i) span *= 3;
        for (long long code = 0; code < span; ++code) {
            long long c = code;
            for (int i = 0; i < len; ++i) {
                s[static_cast<std::size_t>(i)] = static_cast<char>('a' + c % 3);
                c /= 3;
            }
            if (!mining_matches(s, 4, 1, 4, 0.25)) return false;
            if (len == 12 && !mining_matches(s, 4, 1, 2, 0.5)) return false;
        }
    }
    // Random longer sequences, zero support again.
    std::mt19937 rng(4242);
    for (int i = 0; i < 1000; ++i) {
        const int len = 13 + static_cast<int>(rng() % 48);
        std::string t;
        for (int j = 0; j < len; ++j) t.push_back(static_cast<char>('a' + rng() % 3));
        if (!mining_matches(t, 6, 0, 1, 0.0)) return false;
    }
    return true;
}

// ---- 6. squeezer ------------------------------------------------------------

bool check_squeezer() {
    for (int len = 1; len <= 7; ++len) {
        long long span = 1;
        for (int i = 0; i < len; ++i) span *= 3;
        std::vector<WindowTuple> tuples;
        tuples.reserve(static_cast<std::size_t>(span));
        for (long long code = 0; code < span; ++code) {
            WindowTuple t;
            t.window = static_cast<std::size_t>(code);
            long long c = code;
            for (int i = 0; i < len; ++i) {
                t.events.push_back(std::string(1, static_cast<char>('a' + c % 3)));
                c /= 3;
            }
            tuples.push_back(std::move(t));
        }
        for (const auto& x : tuples)
            for (const auto& y : tuples) {
                int oracle = 0;
                for (int i = 0; i < len; ++i)
                    if (x.events[static_cast<std::size_t>(i)] ==
                        y.events[static_cast<std::size_t>(i)])
                        ++oracle;
                if (similarity(x, y) != oracle)
                    return fail_with("similarity mismatch at length " + std::to_string(len));
            }
    }

    std::vector<WindowTuple> ten;
    for (std::size_t i = 0; i < 10; ++i) {
        WindowTuple t;
        t.window = i;
        for (int j = 0; j < 7; ++j)
            t.events.push_back(std::string(1, static_cast<char>('a' + (i + static_cast<std::size_t>(j)) % 3)));
        ten.push_back(std::move(t));
    }
    const ThresholdEstimate est = estimate_threshold(ten, 0.2, 42);
    if (est.repeats != 5) return fail_with("f=0.2 did not run 5 repeats");
    if (est.threshold != est.average + 1.0) return fail_with("threshold is not average + 1");

    std::vector<WindowTuple> hand;
    for (const char* w : {"aaaaaaa", "aaaaaaa", "bbbbbbb"}) {
        WindowTuple t;
        t.window = hand.size();
        for (int i = 0; i < 7; ++i) t.events.push_back(std::string(1, w[i]));
        hand.push_back(std::move(t));
    }
    const auto clusters = squeezer(hand, 4.0);
    if (clusters.size() != 2 || clusters[0].members != std::vector<std::size_t>{0, 1} ||
        clusters[1].members != std::vector<std::size_t>{2})
        return fail_with("hand-built case did not cluster as {{0,1},{2}}");
    return true;
}

// ---- 7. golden end-to-end run ----------------------------------------------

const char* kPinnedText = "On some of the days in the past week, your calorie intake has been low.";

std::string golden_args(const CliRunner& cli) {
    return "summarize --input \"" + (cli.data / "golden.csv").string() +
           "\" --attrs \"calorie intake,carbohydrate intake\"";
}

bool check_golden(const CliRunner& cli) {
    if (cli.run(golden_args(cli), "g1.jsonl") != 0) return fail_with("run 1 failed");
    if (cli.run(golden_args(cli), "g2.jsonl") != 0) return fail_with("run 2 failed");
    if (cli.run(golden_args(cli) + " --threads 8", "g8.jsonl") != 0)
        return fail_with("8-thread run failed");
    const std::string b1 = cli.slurp("g1.jsonl");
    if (b1.empty()) return fail_with("empty output");
    if (b1 != cli.slurp("g2.jsonl")) return fail_with("reruns differ byte-wise");
    if (b1 != cli.slurp("g8.jsonl")) return fail_with("thread counts change bytes");

    for (const auto& row : cli.rows("g1.jsonl"))
        if (row["text"] == kPinnedText) {
            const auto& m = row["metrics"];
            return near(m["T1"].get<double>(), 0.93, 0.01, "pinned T1") &&
                   near(m["T3"].get<double>(), 0.29, 0.01, "pinned T3") &&
                   m["T6"] == 1.0;
        }
    return fail_with("pinned sentence missing from golden output");
}

// ---- 8. metric applicability ------------------------------------------------

bool check_na_semantics(const CliRunner& cli) {
    int comparisons = 0;
    for (const auto& row : cli.rows("g1.jsonl"))
        if (row["type"] == "comparison") {
            ++comparisons;
            const auto& m = row["metrics"];
            if (!m["T1"].is_null() || !m["T2"].is_null() || m["T3"] != 1.0)
                return fail_with("comparison metrics not N/A, N/A, 1");
        }
    if (comparisons == 0) return fail_with("no comparison rows to inspect");

    // Standard-pattern summaries through the real generator: three alike
    // windows around one outlier make the last window's lookalike history.
    RunConfig cfg;
    cfg.granularity = Granularity::week(2);
    cfg.squeezer_sample_fraction = 1.0;
    Vocabulary vocab = default_health_vocabulary();
    TemplateRegistry reg = TemplateRegistry::defaults();
    TimeSeries ts;
    ts.attribute = ts.display = "calorie intake";
    CivilDate d{2024, 1, 1};
    for (double v : {100.0, 115.0, 100.0, 115.0, 150.0, 150.0, 100.0, 115.0}) {
        ts.points.push_back({d, v});
        d = add_days(d, 1);
    }
    SummaryContext ctx;
    ctx.config = &cfg;
    ctx.vocab = &vocab;
    ctx.templates = &reg;
    AttributeContext a;
    a.column = a.display = "calorie intake";
    a.series = &ts;
    a.labels = vocab.evaluation_labels("calorie intake", 5);
    a.disc = symbolize(ts, cfg.granularity, sax_scheme(5, a.labels));
    ctx.attrs.push_back(std::move(a));
    const auto pattern = gen_pattern(ctx, {&ctx.attrs[0]});
    if (!pattern) return fail_with("standard-pattern fixture produced nothing");
    const MetricSet pm = metric_set(pattern->basis);
    if (pm.t1 || pm.t2 || pm.t3 != 1.0)
        return fail_with("standard-pattern metrics not N/A, N/A, 1");

    const std::string args = golden_args(cli) + " --guideline \"" +
                             (cli.data / "guideline.json").string() + "\"";
    if (cli.run(args, "guide.jsonl") != 0) return fail_with("guideline run failed");
    int advice = 0;
    for (const auto& row : cli.rows("guide.jsonl"))
        if (row["type"] == "goal_assistance") {
            ++advice;
            const auto& m = row["metrics"];
            if (!m["T1"].is_null() || !m["T2"].is_null() || !m["T3"].is_null() ||
                !m["T4"].is_null() || !m["T5"].is_null() || !m["T6"].is_number())
                return fail_with("goal assistance reported more than T6");
        }
    if (advice == 0) return fail_with("no goal-assistance rows to inspect");
    return true;
}

// ---- 9. parameter behavior --------------------------------------------------

int if_then_rows(const std::vector<nlohmann::json>& rows) {
    int n = 0;
    for (const auto& row : rows) {
        const std::string t = row["type"].get<std::string>();
        if (t.find("if_then") != std::string::npos) ++n;
    }
    return n;
}

bool check_parameters(const CliRunner& cli) {
    const int at_default = if_then_rows(cli.rows("g1.jsonl"));
    if (at_default < 1) return fail_with("no if-then rows at minsup 0.2");
    if (cli.run(golden_args(cli) + " --minsup 0.5", "strict.jsonl") != 0)
        return fail_with("minsup 0.5 run failed");
    const int at_strict = if_then_rows(cli.rows("strict.jsonl"));
    if (at_strict >= at_default)
        return fail_with("raising minsup did not shrink if-then output (" +
                         std::to_string(at_default) + " -> " + std::to_string(at_strict) + ")");

    if (cli.run(golden_args(cli) + " --granularity none", "flat.jsonl") != 0)
        return fail_with("granularity none run failed");
    const auto rows = cli.rows("flat.jsonl");
    if (rows.empty()) return fail_with("granularity none produced nothing");
    for (const auto& row : rows) {
        const std::string t = row["type"].get<std::string>();
        if (t != "standard_evaluation_stw" && t != "goal_evaluation" &&
            t != "standard_trend" && t != "day_based_pattern")
            return fail_with("window-bound type at granularity none: " + t);
    }
    return true;
}

// ---- 10. heart-rate vocabulary ---------------------------------------------

bool check_heart_rate(const CliRunner& cli) {
    TimeSeries ts;
    ts.attribute = ts.display = "heart rate";
    CivilDate d{2024, 1, 1};
    for (double v : {45.0, 55.0, 72.0, 115.0, 125.0}) {
        ts.points.push_back({d, v});
        d = add_days(d, 1);
    }
    const BinningScheme scheme = heart_rate_scheme();
    const Discretized disc = symbolize(ts, Granularity::full_range(), scheme);
    const char* want[5] = {"abnormally low", "low", "within range", "high", "abnormally high"};
    for (int i = 0; i < 5; ++i) {
        const int letter = disc.days.symbols[static_cast<std::size_t>(i)].letter;
        if (scheme.labels[static_cast<std::size_t>(letter)] != want[i])
            return fail_with("value " + std::to_string(ts.points[static_cast<std::size_t>(i)].value) +
                             " not binned as " + want[i]);
    }

    const fs::path hr_csv = cli.work / "hr.csv";
    {
        std::ofstream out(hr_csv);
        out << "date,heart rate\n";
        CivilDate day{2024, 1, 1};
        for (int i = 0; i < 14; ++i) {
            out << to_iso_string(day) << ",72\n";
            day = add_days(day, 1);
        }
    }
    const std::string args = "summarize --input \"" + hr_csv.string() +
                             "\" --attrs \"heart rate\" --bins \"" +
                             (cli.data / "heart_rate_bins.json").string() + "\"";
    if (cli.run(args, "hr.jsonl") != 0) return fail_with("heart-rate run failed");
    for (const auto& row : cli.rows("hr.jsonl"))
        if (row["text"] ==
            "On all of the days in the past week, your heart rate has been within range.")
            return row["metrics"]["T1"] == 1.0 ||
                   fail_with("constant-in-range T1 is not 1");
    return fail_with("constant-in-range sentence missing");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s <cli-binary> <data-dir>\n", argv[0]);
        return 2;
    }
    CliRunner cli;
    cli.cli = argv[1];
    cli.data = argv[2];
    cli.work = fs::temp_directory_path() /
               ("temposum_accept_" + std::to_string(::getpid()));
    fs::create_directories(cli.work);

    struct Check {
        const char* name;
        bool ok;
    };
    std::vector<Check> checks;
    auto gate = [&](const char* name, bool ok) {
        checks.push_back({name, ok});
        if (ok)
            std::printf("pass  %2zu. %s\n", checks.size(), name);
        else
            std::printf("FAIL  %2zu. %s  [%s]\n", checks.size(), name, g_detail.c_str());
        g_detail.clear();
    };

    gate("quantifier memberships match the drawn curves", check_quantifiers());
    gate("length quality halves per added summarizer", check_length_quality());
    gate("coverage curve: boundaries, midpoint, monotone, continuous", check_coverage_curve());
    gate("symbolic breakpoints, equiprobability, z-idempotence", check_sax());
    gate("mining equals brute force, confidences included", check_mining());
    gate("similarity oracle, repeat count, hand-built clustering", check_squeezer());
    gate("golden run: pinned sentence, byte-stable output", check_golden(cli));
    gate("metric applicability by summary family", check_na_semantics(cli));
    gate("support tightening shrinks rules; window-free mode", check_parameters(cli));
    gate("heart-rate bands and constant-series sentence", check_heart_rate(cli));

    int failures = 0;
    for (const auto& c : checks)
        if (!c.ok) ++failures;
    std::printf("%d/%zu acceptance checks passed\n",
                static_cast<int>(checks.size()) - failures, checks.size());
    fs::remove_all(cli.work);
    return failures == 0 ? 0 : 1;
}
