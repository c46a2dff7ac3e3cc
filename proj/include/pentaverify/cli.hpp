#pragma once

// Subcommand implementations behind the pentaverify executable. Each
// command writes its table to `out`, diagnostics to `err`, and returns the
// process exit code: 0 success, 1 mathematical mismatch, 2 usage or range
// error.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "circle_method.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "partition_core.hpp"
#include "qseries.hpp"
#include "truncated_sums.hpp"

namespace pentaverify::cli {

enum class Command { Seq, VerifyIdentities, VerifyOracles, Ratio, Circle, Lemmas };
enum class Format { Csv, Json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_usage = 2;

/// Growth allowed for a lemma's normalized defect across the n sweep,
/// relative to its value at the smallest n.
inline constexpr double lemma_growth_factor = 3.0;
/// The inversion at the self-dual point tau = i must hold to this.
inline constexpr double eta_exact_tolerance = 1e-6;

struct RunConfig {
    Command command = Command::Seq;
    std::string family;
    long max_n = 0;
    std::vector<long> n_list;
    std::vector<long> k_list;
    long n_cap = 0;
    long k_max = 1;
    long degree = 0;
    double tol = 1e-12;
    Format format = Format::Csv;
    bool assert_converge = false;
    bool force = false;
};

/// Replaceable series builders, so tests can feed a deliberately broken
/// side into the identity checker.
struct IdentitySources {
    std::function<CoeffSeries(long, std::size_t)> mk_closed = mk_gf_closed;
    std::function<CoeffSeries(long, std::size_t)> mk_positive = mk_gf_positive;
    std::function<SeriesPair(long, std::size_t)> square = guozeng_square_sides;
    std::function<SeriesPair(long, std::size_t)> pod = guozeng_pod_sides;
};

namespace detail {

using nlohmann::json;

/// A table of string cells emitted as CSV or as JSON rows.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;

    void emit(std::ostream& os, Format f, const json& config) const
    {
        if (f == Format::Csv) {
            for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
            os << '\n';
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) os << ',';
                    const auto& c = row[i];
                    if (c.is_string())
                        os << c.get<std::string>();
                    else if (c.is_number_float())
                        os << format_real(c.get<double>());
                    else
                        os << c.dump();
                }
                os << '\n';
            }
            return;
        }
        json doc;
        doc["config"] = config;
        doc["rows"] = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < header.size(); ++i) {
                const auto& c = row[i];
                // JSON has no NaN; undefined values become null.
                if (c.is_number_float() && !std::isfinite(c.get<double>()))
                    obj[header[i]] = nullptr;
                else
                    obj[header[i]] = c;
            }
            doc["rows"].push_back(std::move(obj));
        }
        os << doc.dump(2) << '\n';
    }
};

inline std::string to_string(const BigInt& v) { return v.str(); }

inline json config_json(const RunConfig& c)
{
    static const char* names[] = {"seq", "verify identities", "verify oracles", "ratio", "circle", "lemmas"};
    json j;
    j["command"] = names[static_cast<int>(c.command)];
    if (!c.family.empty()) j["family"] = c.family;
    switch (c.command) {
    case Command::Seq: j["max_n"] = c.max_n; break;
    case Command::VerifyIdentities:
        j["kmax"] = c.k_max;
        j["degree"] = c.degree;
        break;
    case Command::VerifyOracles:
        j["ncap"] = c.n_cap;
        j["kmax"] = c.k_max;
        break;
    case Command::Ratio:
        j["n"] = c.n_list;
        j["k"] = c.k_list;
        j["assert_converge"] = c.assert_converge;
        break;
    case Command::Circle:
        j["n"] = c.n_list;
        j["k"] = c.k_list;
        j["tol"] = c.tol;
        break;
    case Command::Lemmas:
        j["n"] = c.n_list;
        j["k"] = c.k_list;
        j["force"] = c.force;
        break;
    }
    j["format"] = c.format == Format::Csv ? "csv" : "json";
    return j;
}

inline long max_of(const std::vector<long>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace detail

inline int cmd_seq(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto fam = parse_family(c.family);
    if (!fam) {
        err << "seq: unknown family '" << c.family << "' (expected p, overp or pod)\n";
        return exit_usage;
    }
    if (c.max_n < 0) {
        err << "seq: --max must be nonnegative\n";
        return exit_usage;
    }
    const SeqTable t = build_table(*fam, c.max_n);
    detail::Table tab{{"n", "value"}, {}};
    for (long n = 0; n <= t.max_n(); ++n) tab.rows.push_back({n, detail::to_string(t[n])});
    tab.emit(out, c.format, detail::config_json(c));
    return exit_ok;
}

inline int cmd_verify_identities(const RunConfig& c, std::ostream& out, std::ostream& err,
                                 const IdentitySources& src = {})
{
    if (c.k_max < 1 || c.degree < 0) {
        err << "verify identities: need --kmax >= 1 and --degree >= 0\n";
        return exit_usage;
    }
    const auto order = static_cast<std::size_t>(c.degree);
    struct Outcome {
        std::string name;
        long k;
        std::optional<std::size_t> bad;
        BigInt lhs, rhs;
    };
    const auto k_count = static_cast<std::size_t>(c.k_max);
    auto results = parallel_map(k_count * 3, [&](std::size_t idx) {
        const long k = static_cast<long>(idx / 3) + 1;
        CoeffSeries a, b;
        std::string name;
        switch (idx % 3) {
        case 0:
            name = "mk_gf";
            a = src.mk_closed(k, order);
            b = src.mk_positive(k, order);
            break;
        case 1: {
            name = "guozeng_square";
            auto s = src.square(k, order);
            a = std::move(s.lhs);
            b = std::move(s.rhs);
            break;
        }
        default: {
            name = "guozeng_pod";
            auto s = src.pod(k, order);
            a = std::move(s.lhs);
            b = std::move(s.rhs);
            break;
        }
        }
        Outcome o{name, k, first_mismatch(a, b), 0, 0};
        if (o.bad) {
            o.lhs = a.coeff(*o.bad);
            o.rhs = b.coeff(*o.bad);
        }
        return o;
    });

    detail::Table tab{{"identity", "k", "degree", "match", "first_bad_exponent", "lhs", "rhs"}, {}};
    bool ok = true;
    for (const auto& o : results) {
        if (o.bad) {
            ok = false;
            err << "mismatch: " << o.name << " k=" << o.k << " first bad exponent " << *o.bad
                << " lhs=" << o.lhs << " rhs=" << o.rhs << '\n';
            tab.rows.push_back({o.name, o.k, c.degree, false, static_cast<long>(*o.bad),
                                detail::to_string(o.lhs), detail::to_string(o.rhs)});
        } else {
            tab.rows.push_back({o.name, o.k, c.degree, true, -1, "", ""});
        }
    }
    tab.emit(out, c.format, detail::config_json(c));
    return ok ? exit_ok : exit_mismatch;
}

inline int cmd_verify_oracles(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto fam = parse_sum_family(c.family);
    if (!fam) {
        err << "verify oracles: unknown family '" << c.family << "' (expected mk, mkbar or mp)\n";
        return exit_usage;
    }
    if (c.n_cap < 1 || c.k_max < 1) {
        err << "verify oracles: need --ncap >= 1 and --kmax >= 1\n";
        return exit_usage;
    }
    if (c.n_cap > oracle_cap(*fam)) {
        err << "CapExceeded: --ncap " << c.n_cap << " above enumeration cap " << oracle_cap(*fam)
            << " for " << sum_family_name(*fam) << '\n';
        return exit_usage;
    }
    const SeqTable base = build_table(base_family(*fam), c.n_cap);
    auto counts = parallel_map(static_cast<std::size_t>(c.n_cap), [&](std::size_t i) {
        const long n = static_cast<long>(i) + 1;
        std::vector<long> per_k;
        for (long k = 1; k <= c.k_max; ++k) per_k.push_back(oracle(*fam, n, k));
        return per_k;
    });
    detail::Table tab{{"family", "n", "k", "formula", "oracle", "match"}, {}};
    bool ok = true;
    for (long n = 1; n <= c.n_cap; ++n)
        for (long k = 1; k <= c.k_max; ++k) {
            const BigInt f = evaluate({*fam, n, k}, base);
            const long o = counts[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)];
            const bool match = (f == o);
            if (!match) {
                ok = false;
                err << "mismatch: " << sum_family_name(*fam) << " n=" << n << " k=" << k
                    << " formula=" << f << " oracle=" << o << '\n';
            }
            tab.rows.push_back({std::string(sum_family_name(*fam)), n, k, detail::to_string(f), o, match});
        }
    tab.emit(out, c.format, detail::config_json(c));
    return ok ? exit_ok : exit_mismatch;
}

inline int cmd_ratio(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const auto fam = parse_sum_family(c.family);
    if (!fam) {
        err << "ratio: unknown family '" << c.family << "' (expected mk, mkbar or mp)\n";
        return exit_usage;
    }
    if (c.n_list.empty() || c.k_list.empty()) {
        err << "ratio: --n and --k must be nonempty\n";
        return exit_usage;
    }
    for (long n : c.n_list)
        if (n < 1) {
            err << "ratio: every n must be >= 1\n";
            return exit_usage;
        }
    for (long k : c.k_list)
        if (k < 1) {
            err << "ratio: every k must be >= 1\n";
            return exit_usage;
        }
    const SeqTable base = build_table(base_family(*fam), detail::max_of(c.n_list));
    const auto rows = ratio_table(*fam, c.n_list, c.k_list, base);
    detail::Table tab{{"family", "n", "k", "ln_exact", "ln_main", "rel_dev", "in_regime"}, {}};
    for (const auto& r : rows)
        tab.rows.push_back({std::string(sum_family_name(r.family)), r.n, r.k, r.exact.ln_abs,
                            r.ln_main, r.rel_dev, r.in_regime});
    tab.emit(out, c.format, detail::config_json(c));
    if (c.assert_converge && !ratio_converges(rows)) {
        err << "ratio: |rel_dev| is not strictly decreasing in n\n";
        return exit_mismatch;
    }
    return exit_ok;
}

inline int cmd_circle(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    if (c.n_list.empty() || c.k_list.empty()) {
        err << "circle: --n and --k must be nonempty\n";
        return exit_usage;
    }
    if (!(c.tol > 0)) {
        err << "circle: --tol must be positive\n";
        return exit_usage;
    }
    for (long n : c.n_list)
        if (n < 1 || n > circle_max_n) {
            err << "circle: n = " << n << " outside supported range 1.." << circle_max_n << '\n';
            return exit_usage;
        }
    for (long k : c.k_list)
        if (k < 1) {
            err << "circle: every k must be >= 1\n";
            return exit_usage;
        }
    const SeqTable p = build_p_table(detail::max_of(c.n_list));
    std::vector<std::pair<long, long>> jobs;
    for (long k : c.k_list)
        for (long n : c.n_list) jobs.emplace_back(n, k);
    auto results = parallel_map(jobs.size(), [&](std::size_t i) {
        auto spec = ContourSpec::make(jobs[i].first, jobs[i].second);
        spec.tol = c.tol;
        return circle_method_mk(spec);
    });
    detail::Table tab{{"n", "k", "numeric", "imag_residual", "major", "minor", "rounded", "exact", "match"}, {}};
    bool ok = true;
    for (const auto& r : results) {
        const BigInt exact = mk(r.n, r.k, p);
        const bool match = std::abs(r.value - exact.convert_to<double>()) < 0.5;
        if (!match) {
            ok = false;
            err << "mismatch: circle n=" << r.n << " k=" << r.k << " numeric=" << format_real(r.value)
                << " exact=" << exact << '\n';
        }
        tab.rows.push_back({r.n, r.k, r.value, r.imag_residual, r.major.real(), r.minor.real(),
                            static_cast<long>(r.rounded), detail::to_string(exact), match});
    }
    tab.emit(out, c.format, detail::config_json(c));
    return ok ? exit_ok : exit_mismatch;
}

/// One row of the lemma sweep.
struct LemmaRow {
    std::string check;
    long n = 0;
    long k = 0;
    double value = 0;
    double bound = 0;
    bool pass = false;
};

/// Near-arc and minor-arc normalized defects for every (n, k), the trivial
/// numerator bound, and the eta inversion at tau = i. Defects must stay
/// within lemma_growth_factor of their value at the smallest n.
inline std::vector<LemmaRow> lemma_rows(const std::vector<long>& n_list, const std::vector<long>& k_list,
                                        bool force)
{
    std::vector<std::pair<long, long>> jobs;
    for (long k : k_list)
        for (long n : n_list) jobs.emplace_back(n, k);
    struct Pair {
        LemmaReport near, away;
    };
    auto reports = parallel_map(jobs.size(), [&](std::size_t i) {
        return Pair{lemma_near1_check(jobs[i].first, jobs[i].second, force),
                    lemma_away1_check(jobs[i].first, jobs[i].second, force)};
    });
    const long n0 = *std::min_element(n_list.begin(), n_list.end());
    std::vector<LemmaRow> rows;
    for (const char* check : {"near1", "away1"}) {
        const bool near = std::string(check) == "near1";
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            const auto& [n, k] = jobs[i];
            double base = 0;
            for (std::size_t j = 0; j < jobs.size(); ++j)
                if (jobs[j].second == k && jobs[j].first == n0)
                    base = near ? reports[j].near.normalized_defect : reports[j].away.normalized_defect;
            const double v = near ? reports[i].near.normalized_defect : reports[i].away.normalized_defect;
            const double bound = lemma_growth_factor * base;
            rows.push_back({check, n, k, v, bound, std::isfinite(v) && v <= bound});
        }
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const double v = reports[i].away.max_numerator_ratio;
        rows.push_back({"away1_trivial_bound", jobs[i].first, jobs[i].second, v, 1.0, v <= 1.0});
    }
    const auto eta = eta_inversion_check({0.0, 1.0});
    rows.push_back({"eta_inversion_leading", 0, 0, eta.leading_defect, eta.bound, eta.within_bound()});
    rows.push_back({"eta_inversion_exact", 0, 0, eta.exact_defect, eta_exact_tolerance,
                    eta.exact_defect < eta_exact_tolerance});
    return rows;
}

inline int cmd_lemmas(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    if (c.n_list.empty() || c.k_list.empty()) {
        err << "lemmas: --n and --k must be nonempty\n";
        return exit_usage;
    }
    for (long n : c.n_list)
        for (long k : c.k_list) {
            if (n < 1 || k < 1) {
                err << "lemmas: n and k must be positive\n";
                return exit_usage;
            }
            if (!c.force && !regime_check(SumFamily::Mk, n, k)) {
                err << "RegimeViolation: k = " << k << " with n = " << n
                    << " fails k^8 <= n (use --force to override)\n";
                return exit_usage;
            }
        }
    const auto rows = lemma_rows(c.n_list, c.k_list, c.force);
    detail::Table tab{{"check", "n", "k", "value", "bound", "pass"}, {}};
    bool ok = true;
    for (const auto& r : rows) {
        ok = ok && r.pass;
        if (!r.pass)
            err << "assertion failed: " << r.check << " n=" << r.n << " k=" << r.k
                << " value=" << format_real(r.value) << " bound=" << format_real(r.bound) << '\n';
        tab.rows.push_back({r.check, r.n, r.k, r.value, r.bound, r.pass});
    }
    tab.emit(out, c.format, detail::config_json(c));
    return ok ? exit_ok : exit_mismatch;
}

/// Dispatches a parsed configuration. Library errors on valid arguments
/// map to exit code 2.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        switch (c.command) {
        case Command::Seq: return cmd_seq(c, out, err);
        case Command::VerifyIdentities: return cmd_verify_identities(c, out, err);
        case Command::VerifyOracles: return cmd_verify_oracles(c, out, err);
        case Command::Ratio: return cmd_ratio(c, out, err);
        case Command::Circle: return cmd_circle(c, out, err);
        case Command::Lemmas: return cmd_lemmas(c, out, err);
        }
    } catch (const NoConvergence& e) {
        err << "NoConvergence: " << e.what() << '\n';
        return exit_mismatch;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace pentaverify::cli
