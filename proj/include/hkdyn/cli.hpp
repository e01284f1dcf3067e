#pragma once

// Command-line front end. run() parses argv, validates every parameter
// before computing, and writes CSV or JSON in one pass at the end.
//
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 runtime or
// numeric error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hkdyn/beta.hpp"
#include "hkdyn/complexity.hpp"
#include "hkdyn/hk_map.hpp"
#include "hkdyn/return_times.hpp"
#include "hkdyn/sturmian.hpp"

namespace hkdyn::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_runtime = 3;

/// Environment variable naming the directory for relative --out paths.
inline constexpr const char* output_dir_env = "HKDYN_OUTPUT_DIR";

enum class Format { csv, json };

/// A rendered result: CSV rows plus a JSON document carrying the same data
/// and any summary fields.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    nlohmann::ordered_json document;
    std::string summary;  // one line for the terminal when writing to a file
};

inline std::string fmt_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string fmt_real(long double v)
{
    return fmt_real(static_cast<double>(v));
}

inline std::string fmt_int(long long v)
{
    return std::to_string(v);
}

inline std::string render_csv(const Table& t)
{
    std::ostringstream os;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << (i ? "," : "") << cells[i];
        }
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) {
        line(r);
    }
    return os.str();
}

inline std::string render_json(const Table& t)
{
    return t.document.dump(2) + "\n";
}

/// Rational from "p/q", "p" or a decimal such as "0.25".
inline Rational parse_rational(const std::string& text)
{
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            const BigInt num(text.substr(0, slash));
            const BigInt den(text.substr(slash + 1));
            require(den != 0, "zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            return Rational(BigInt(text));
        }
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(text.size() - dot - 1));
        return Rational(BigInt(digits), scale);
    } catch (const precondition_error&) {
        throw;
    } catch (const std::exception&) {
        throw precondition_error("malformed rational number '" + text + "'");
    }
}

inline real_ext parse_beta(const std::string& text)
{
    if (text == "golden") {
        return golden_ratio;
    }
    try {
        std::size_t used = 0;
        const real_ext v = std::stold(text, &used);
        require(used == text.size(), "malformed beta '" + text + "'");
        return v;
    } catch (const precondition_error&) {
        throw;
    } catch (const std::exception&) {
        throw precondition_error("malformed beta '" + text + "'");
    }
}

inline std::vector<int> parse_bits(const std::string& text)
{
    std::vector<int> out;
    for (char ch : text) {
        require(ch == '0' || ch == '1', "reference word must be a string of 0s and 1s");
        out.push_back(ch - '0');
    }
    return out;
}

inline std::vector<int> read_symbols(const std::string& path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open input file '" + path + "'");
    std::vector<int> out;
    std::string token;
    while (in >> token) {
        std::stringstream parts(token);
        std::string item;
        while (std::getline(parts, item, ',')) {
            if (item.empty()) {
                continue;
            }
            try {
                std::size_t used = 0;
                const int v = std::stoi(item, &used);
                require(used == item.size(), "malformed symbol '" + item + "'");
                out.push_back(v);
            } catch (const precondition_error&) {
                throw;
            } catch (const std::exception&) {
                throw precondition_error("malformed symbol '" + item + "'");
            }
        }
    }
    return out;
}

namespace detail {

struct HkOptions {
    std::int64_t p = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;
    std::int64_t pmax = 0;
    int cells = 2;
    std::vector<double> h_bounds;
    std::vector<double> v_bounds;
};

inline PartitionPair make_partitions(const HkOptions& o)
{
    Partition h = o.h_bounds.empty() ? Partition::uniform(o.cells) : Partition(o.h_bounds);
    Partition v = o.v_bounds.empty() ? Partition::uniform(o.cells) : Partition(o.v_bounds);
    require(h.cells() == o.cells && v.cells() == o.cells,
            "--cells must equal the number of cells given by --h-bounds/--v-bounds");
    return {std::move(h), std::move(v)};
}

// Codes longer than this are reported with floating values only; the exact
// rational has on the order of `digits` decimal digits.
inline constexpr std::size_t exact_code_limit = 4096;

inline Table hk_table(const std::vector<AnglePair>& pairs, const PartitionPair& parts, bool finite,
                      nlohmann::ordered_json params)
{
    const DigitSequence code = encode_stream(pairs, parts, finite);
    Table t;
    t.header = {"p", "c", "d", "a_p", "phi", "T_re", "theta", "a_digit", "b_digit"};
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const AnglePair& a = pairs[i];
        t.rows.push_back({fmt_int(a.p), fmt_int(a.c), fmt_int(a.d), fmt_int(a.a_p), fmt_real(a.phi),
                          fmt_real(a.kloosterman), fmt_real(a.theta), fmt_int(code.a_digits[i]),
                          fmt_int(code.b_digits[i])});
        rows.push_back({{"p", a.p},
                        {"c", a.c},
                        {"d", a.d},
                        {"a_p", a.a_p},
                        {"phi", a.phi},
                        {"T_re", a.kloosterman},
                        {"theta", a.theta},
                        {"a_digit", code.a_digits[i]},
                        {"b_digit", code.b_digits[i]}});
    }
    nlohmann::ordered_json coding{{"base", code.base},
                                  {"finite", code.finite},
                                  {"length", code.a_digits.size()},
                                  {"horizontal_boundaries", parts.horizontal.boundaries()},
                                  {"vertical_boundaries", parts.vertical.boundaries()},
                                  {"a_digits", code.a_digits},
                                  {"b_digits", code.b_digits}};
    if (!pairs.empty()) {
        if (pairs.size() <= exact_code_limit) {
            const UnitSquarePoint pt = digits_to_point(code);
            coding["x"] = pt.x.str();
            coding["y"] = pt.y.str();
            coding["x_value"] = pt.x_value();
            coding["y_value"] = pt.y_value();
        } else {
            double x = 0.0, y = 0.0;
            for (std::size_t i = std::min<std::size_t>(pairs.size(), 64); i-- > 0;) {
                x = (x + code.a_digits[i]) / code.base;
                y = (y + code.b_digits[i]) / code.base;
            }
            coding["x"] = nullptr;
            coding["y"] = nullptr;
            coding["x_value"] = x;
            coding["y_value"] = y;
        }
        coding["truncation_bound"] = finite ? 0.0 : std::pow(static_cast<double>(code.base), -static_cast<double>(pairs.size()));
    }
    t.document = {{"command", params["command"]}, {"parameters", params}, {"rows", rows}, {"code", coding}};
    t.summary = std::to_string(pairs.size()) + " angle pairs";
    return t;
}

}  // namespace detail

class Runner {
public:
    Runner() : app_("hkdyn: Hasse-Kloosterman maps, beta-dynamics, Sturmian measures and return times")
    {
        app_.name("hkdyn");
        app_.set_config("--config", "", "TOML/INI file mirroring the command-line flags; flags win");
        app_.add_option("--out", out_path_, "output file (stdout when omitted)");
        app_.add_option("--format", format_name_, "csv or json (default: from --out extension, else csv)")
            ->check(CLI::IsMember({"csv", "json"}));
        app_.add_option("--workers", workers_, "worker threads")->check(CLI::PositiveNumber);
        app_.require_subcommand(1);
        app_.fallthrough();

        auto* hkf = app_.add_subcommand("hk-functional", "HK map on (F_p*)^2 and its finite code");
        hkf->add_option("--p", hk_.p, "odd prime")->required();
        add_partition_options(hkf);

        auto* hks = app_.add_subcommand("hk-scan", "HK map of one curve over odd primes up to --pmax");
        hks->add_option("--c", hk_.c, "coefficient c")->required();
        hks->add_option("--d", hk_.d, "coefficient d")->required();
        hks->add_option("--pmax", hk_.pmax, "largest prime scanned")->required();
        add_partition_options(hks);

        auto* beta = app_.add_subcommand("beta", "beta-expansions and natural-extension orbits");
        beta->add_option("--beta", beta_text_, "beta > 1, or 'golden'")->required();
        beta->add_option("--x", beta_x_, "point in [0,1]");
        beta->add_option("--y", beta_y_, "second coordinate of the orbit seed");
        beta->add_option("--digits", beta_digits_, "expansion length");
        beta->add_option("--horizon", beta_horizon_, "digits of the expansion of 1 used for admissibility");
        beta->add_option("--orbit-steps", orbit_steps_, "emit this many natural-extension orbit points instead");
        beta->add_option("--burn-in", burn_in_, "orbit steps discarded first");
        beta->add_option("--seed", seed_, "seed for the orbit's low-bit refresh");

        auto* st = app_.add_subcommand("sturmian", "doubling-map cycles, Sturmian measures, ergodic optimization");
        st->add_option("--max-period", max_period_, "largest cycle period (<= 16)");
        st->add_option("--rho", rho_text_, "rotation number p/q of a Sturmian measure to report");
        st->add_option("--f", f_name_, "objective: square ((x-center)^2), cos (cos 2pi(x-center)), none")
            ->check(CLI::IsMember({"square", "cos", "none"}));
        st->add_option("--center", center_, "center / omega of the objective");
        st->add_option("--theta", theta_, "tilt: optimize f(x) + theta*x");
        st->add_option("--mode", mode_name_, "min or max")->check(CLI::IsMember({"min", "max"}));

        auto* cx = app_.add_subcommand("complexity", "block complexity and entropy estimates of a symbol stream");
        cx->add_option("--source", source_, "sturmian, bernoulli, beta or file")
            ->check(CLI::IsMember({"sturmian", "bernoulli", "beta", "file"}));
        cx->add_option("--rho", rho_text_, "rotation number for --source sturmian");
        cx->add_option("--prob", prob_, "P(1) for --source bernoulli");
        cx->add_option("--beta", beta_text_, "beta for --source beta");
        cx->add_option("--x", beta_x_, "start point for --source beta");
        cx->add_option("--input", input_path_, "symbol file for --source file");
        cx->add_option("--alphabet", alphabet_, "alphabet size for --source file");
        cx->add_option("--length", length_, "generated sequence length");
        cx->add_option("--n-max", n_max_, "largest block length");
        cx->add_option("--seed", seed_, "seed for --source bernoulli");
        cx->add_flag("--bits", bits_, "report entropies in bits instead of nats");

        auto* rt = app_.add_subcommand("return-times", "normalized return/hitting times to a cylinder");
        rt->add_option("--system", system_name_, "doubling, bernoulli or odometer")
            ->check(CLI::IsMember({"doubling", "bernoulli", "odometer"}));
        rt->add_option("--prob", prob_, "P(1) for bernoulli");
        rt->add_option("--depth", depth_, "cylinder depth (<= 24)");
        rt->add_option("--samples", samples_, "number of samples");
        rt->add_option("--seed", seed_, "master seed");
        rt->add_option("--mode", time_mode_, "return or hitting")->check(CLI::IsMember({"return", "hitting"}));
        rt->add_option("--word", word_text_, "reference word as a 0/1 string (default: digits of sqrt(2)-1)");
    }

    int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
    {
        std::reverse(args.begin(), args.end());
        try {
            app_.parse(args);
        } catch (const CLI::CallForHelp&) {
            out << app_.help();
            return exit_ok;
        } catch (const CLI::CallForAllHelp&) {
            out << app_.help("", CLI::AppFormatMode::All);
            return exit_ok;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        }

        try {
            const Table table = dispatch();
            const Format format = resolve_format();
            const std::string body = format == Format::json ? render_json(table) : render_csv(table);
            if (out_path_.empty()) {
                out << body;
            } else {
                const std::filesystem::path path = resolve_output_path();
                std::ofstream file(path, std::ios::binary);
                if (!file) {
                    err << "error: cannot write '" << path.string() << "'\n";
                    return exit_runtime;
                }
                file << body;
                file.close();
                if (!file) {
                    err << "error: failed writing '" << path.string() << "'\n";
                    return exit_runtime;
                }
                out << table.summary << " -> " << path.string() << "\n";
            }
            return exit_ok;
        } catch (const precondition_error& e) {
            err << "error: " << e.what() << "\n";
            return exit_validation;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return exit_runtime;
        }
    }

private:
    void add_partition_options(CLI::App* sub)
    {
        sub->add_option("--cells", hk_.cells, "partition cardinality d");
        sub->add_option("--h-bounds", hk_.h_bounds, "interior boundaries of the horizontal partition")->delimiter(',');
        sub->add_option("--v-bounds", hk_.v_bounds, "interior boundaries of the vertical partition")->delimiter(',');
    }

    Format resolve_format() const
    {
        if (!format_name_.empty()) {
            return format_name_ == "json" ? Format::json : Format::csv;
        }
        return std::filesystem::path(out_path_).extension() == ".json" ? Format::json : Format::csv;
    }

    std::filesystem::path resolve_output_path() const
    {
        std::filesystem::path path(out_path_);
        if (path.is_relative()) {
            if (const char* dir = std::getenv(output_dir_env); dir != nullptr && *dir != '\0') {
                path = std::filesystem::path(dir) / path;
            }
        }
        return path;
    }

    Table dispatch()
    {
        for (const auto* sub : app_.get_subcommands()) {
            const std::string name = sub->get_name();
            if (name == "hk-functional") {
                return hk_functional();
            }
            if (name == "hk-scan") {
                return hk_scan();
            }
            if (name == "beta") {
                return beta();
            }
            if (name == "sturmian") {
                return sturmian();
            }
            if (name == "complexity") {
                return complexity();
            }
            if (name == "return-times") {
                return return_times();
            }
        }
        throw precondition_error("no command given");
    }

    Table hk_functional()
    {
        const Prime p = odd_prime(hk_.p);
        const PartitionPair parts = detail::make_partitions(hk_);
        const nlohmann::ordered_json params{{"command", "hk-functional"}, {"p", hk_.p}, {"cells", hk_.cells}};
        return detail::hk_table(hk_functional_scan(p, workers_), parts, true, params);
    }

    Table hk_scan()
    {
        require(hk_.c != 0 && hk_.d != 0, "--c and --d must be nonzero");
        require(hk_.pmax >= 2, "--pmax must be >= 2");
        require(hk_.pmax <= static_cast<std::int64_t>(max_field_prime), "--pmax must not exceed 2^31-1");
        (void)CubicCurveParams(hk_.c, hk_.d);
        const PartitionPair parts = detail::make_partitions(hk_);
        const nlohmann::ordered_json params{{"command", "hk-scan"},
                                            {"c", hk_.c},
                                            {"d", hk_.d},
                                            {"pmax", hk_.pmax},
                                            {"cells", hk_.cells}};
        return detail::hk_table(hk_arithmetic_scan(hk_.c, hk_.d, hk_.pmax, workers_), parts, false, params);
    }

    Table beta()
    {
        const real_ext b = parse_beta(beta_text_);
        require(b > 1, "beta must be > 1");
        require(beta_x_ >= 0 && beta_x_ <= 1, "--x must lie in [0, 1]");
        require(beta_y_ >= 0 && beta_y_ <= 1, "--y must lie in [0, 1]");
        require(beta_digits_ >= 1 && beta_digits_ <= 4096, "--digits must lie in [1, 4096]");
        require(beta_horizon_ >= 1, "--horizon must be >= 1");
        Table t;
        if (orbit_steps_ > 0) {
            const auto orbit = natural_extension_orbit({beta_x_, beta_y_}, b, orbit_steps_, burn_in_, seed_);
            t.header = {"k", "x", "y"};
            auto xs = nlohmann::ordered_json::array();
            auto ys = nlohmann::ordered_json::array();
            for (std::size_t k = 0; k < orbit.size(); ++k) {
                t.rows.push_back({fmt_int(static_cast<long long>(k)), fmt_real(orbit[k].x), fmt_real(orbit[k].y)});
                xs.push_back(static_cast<double>(orbit[k].x));
                ys.push_back(static_cast<double>(orbit[k].y));
            }
            t.document = {{"command", "beta"},
                          {"parameters",
                           {{"beta", static_cast<double>(b)},
                            {"x", static_cast<double>(beta_x_)},
                            {"y", static_cast<double>(beta_y_)},
                            {"orbit_steps", orbit_steps_},
                            {"burn_in", burn_in_},
                            {"seed", seed_}}},
                          {"x", xs},
                          {"y", ys}};
            t.summary = std::to_string(orbit.size()) + " orbit points";
            return t;
        }
        const BetaExpansion e = beta_expansion(beta_x_, b, beta_digits_);
        const Admissibility adm = is_admissible(e.digits, b, beta_horizon_);
        t.header = {"i", "digit", "t"};
        real_ext orbit_point = beta_x_;
        for (std::size_t i = 0; i < e.digits.size(); ++i) {
            t.rows.push_back({fmt_int(static_cast<long long>(i + 1)), fmt_int(e.digits[i]), fmt_real(orbit_point)});
            orbit_point = beta_map_step(orbit_point, b);
        }
        t.document = {{"command", "beta"},
                      {"parameters",
                       {{"beta", static_cast<double>(b)},
                        {"x", static_cast<double>(beta_x_)},
                        {"digits", beta_digits_},
                        {"horizon", beta_horizon_}}},
                      {"digits", e.digits},
                      {"terminates", e.terminates},
                      {"value", static_cast<double>(beta_value(e.digits, b))},
                      {"admissibility", to_string(adm)},
                      {"quasi_greedy_one", quasi_greedy_one(b, beta_horizon_)}};
        t.summary = std::to_string(e.digits.size()) + " digits, " + to_string(adm);
        return t;
    }

    Table sturmian()
    {
        require(max_period_ >= 1 && max_period_ <= max_enumeration_period, "--max-period must lie in [1, 16]");
        std::optional<Rational> rho;
        if (!rho_text_.empty()) {
            rho = parse_rational(rho_text_);
            require(*rho >= 0 && *rho <= 1, "--rho must lie in [0, 1]");
            require(boost::multiprecision::denominator(*rho) <= 4096, "--rho denominator must not exceed 4096");
        }
        const double center = center_;
        const std::string f_name = f_name_;
        const auto f = [&](double x) {
            if (f_name == "square") {
                return (x - center) * (x - center);
            }
            if (f_name == "cos") {
                return std::cos(2.0 * std::numbers::pi * (x - center));
            }
            return 0.0;
        };
        const auto cycles = enumerate_cycles(max_period_);
        const OptimizeMode mode = mode_name_ == "max" ? OptimizeMode::maximize : OptimizeMode::minimize;
        const OptimizationResult best = ergodic_optimize(f, theta_, cycles, mode);

        Table t;
        t.header = {"word", "period", "barycentre", "variance", "geometric_mean", "integral", "balanced", "optimal"};
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            const OrbitStats s = orbit_stats(cycles[i], f);
            const double integral = s.integral_f + theta_ * static_cast<double>(s.barycentre);
            const bool balanced = is_balanced(cycles[i].word);
            t.rows.push_back({cycles[i].word.str(), fmt_int(static_cast<long long>(cycles[i].period())),
                              s.barycentre.str(), s.variance.str(), fmt_real(s.geometric_mean), fmt_real(integral),
                              balanced ? "1" : "0", i == best.index ? "1" : "0"});
            rows.push_back({{"word", cycles[i].word.str()},
                            {"period", cycles[i].period()},
                            {"barycentre", s.barycentre.str()},
                            {"variance", s.variance.str()},
                            {"geometric_mean", s.geometric_mean},
                            {"integral", integral},
                            {"balanced", balanced}});
        }
        t.document = {{"command", "sturmian"},
                      {"parameters",
                       {{"max_period", max_period_},
                        {"f", f_name_},
                        {"center", center_},
                        {"theta", theta_},
                        {"mode", mode_name_}}},
                      {"cycles", rows},
                      {"optimum",
                       {{"word", cycles[best.index].word.str()}, {"value", best.value}, {"margin", best.margin}}}};
        if (rho) {
            const BinaryWord w = sturmian_word(*rho);
            const PeriodicOrbitMeasure m = word_to_orbit(w);
            const OrbitStats s = orbit_stats(m);
            std::vector<std::string> pts;
            for (const auto& x : m.points) {
                pts.push_back(x.str());
            }
            t.document["sturmian"] = {{"rho", rho->str()},
                                      {"word", w.str()},
                                      {"points", pts},
                                      {"barycentre", s.barycentre.str()},
                                      {"variance", s.variance.str()},
                                      {"semicircle", in_semicircle(m)}};
        }
        t.summary = std::to_string(cycles.size()) + " cycles, optimum " + cycles[best.index].word.str();
        return t;
    }

    Table complexity()
    {
        require(n_max_ >= 2, "--n-max must be >= 2");
        require(length_ >= 1 && length_ <= 100000000, "--length must lie in [1, 1e8]");
        std::vector<int> symbols;
        int alphabet = 2;
        if (source_ == "sturmian") {
            const Rational rho = parse_rational(rho_text_.empty() ? "233/377" : rho_text_);
            require(rho >= 0 && rho <= 1, "--rho must lie in [0, 1]");
            require(boost::multiprecision::denominator(rho) <= 4096, "--rho denominator must not exceed 4096");
            const BinaryWord w = sturmian_word(rho);
            for (std::size_t i = 0; i < length_; ++i) {
                symbols.push_back(w[i]);
            }
        } else if (source_ == "bernoulli") {
            require(prob_ > 0.0 && prob_ < 1.0, "--prob must lie in (0, 1)");
            std::mt19937_64 engine(seed_);
            for (std::size_t i = 0; i < length_; ++i) {
                symbols.push_back(static_cast<double>(engine() >> 11U) * 0x1p-53 < prob_ ? 1 : 0);
            }
        } else if (source_ == "beta") {
            const real_ext b = parse_beta(beta_text_.empty() ? "golden" : beta_text_);
            require(b > 1, "beta must be > 1");
            require(beta_x_ >= 0 && beta_x_ < 1, "--x must lie in [0, 1)");
            // Digits come from a natural-extension orbit so that long
            // streams do not collapse in floating point.
            const auto orbit = natural_extension_orbit({beta_x_, 0}, b, length_, 0, seed_);
            real_ext x = beta_x_;
            for (const auto& pt : orbit) {
                symbols.push_back(static_cast<int>(std::floor(b * x)));
                x = pt.x;
            }
            alphabet = std::max(2, max_digit(b) + 1);
        } else {
            require(!input_path_.empty(), "--source file needs --input");
            symbols = read_symbols(input_path_);
            alphabet = alphabet_;
        }
        require(symbols.size() >= n_max_, "sequence shorter than --n-max");
        const SymbolSequence seq(std::move(symbols), alphabet);
        const double unit = bits_ ? std::log(2.0) : 1.0;

        Table t;
        t.header = {"n", "p_n", "h_top", "h_top_status", "h_rate", "h_rate_status"};
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t n = 2; n <= n_max_; ++n) {
            const std::size_t pn = block_complexity(seq, n);
            const Estimate top = topological_entropy_estimate(seq, n);
            const Estimate rate = empirical_entropy_rate(seq, n);
            t.rows.push_back({fmt_int(static_cast<long long>(n)), fmt_int(static_cast<long long>(pn)),
                              fmt_real(top.value / unit), to_string(top.status), fmt_real(rate.value / unit),
                              to_string(rate.status)});
            rows.push_back({{"n", n},
                            {"p_n", pn},
                            {"h_top", top.value / unit},
                            {"h_top_status", to_string(top.status)},
                            {"h_rate", rate.value / unit},
                            {"h_rate_status", to_string(rate.status)}});
        }
        t.document = {{"command", "complexity"},
                      {"parameters",
                       {{"source", source_},
                        {"length", seq.size()},
                        {"alphabet", alphabet},
                        {"n_max", n_max_},
                        {"unit", bits_ ? "bits" : "nats"}}},
                      {"rows", rows}};
        t.summary = std::to_string(seq.size()) + " symbols";
        return t;
    }

    Table return_times()
    {
        ReturnSystem system = system_name_ == "odometer"    ? ReturnSystem::odometer()
                              : system_name_ == "bernoulli" ? ReturnSystem::bernoulli(prob_)
                                                            : ReturnSystem::doubling();
        require(depth_ >= 1 && depth_ <= max_cylinder_depth, "--depth must lie in [1, 24]");
        require(samples_ >= 1, "--samples must be >= 1");
        if (system.kind == SystemKind::bernoulli) {
            require(prob_ > 0.0 && prob_ < 1.0, "--prob must lie in (0, 1)");
        }
        std::vector<int> word;
        if (!word_text_.empty()) {
            word = parse_bits(word_text_);
            require(static_cast<int>(word.size()) >= depth_, "--word is shorter than --depth");
        }
        const TimeMode mode = time_mode_ == "hitting" ? TimeMode::hitting_time : TimeMode::return_time;
        const ReturnSample s = return_time_samples(system, depth_, samples_, seed_, mode, word, workers_);
        const double ks = ks_vs_exponential(s);
        const MeanEstimate m = mean_with_error(s.normalized_times);

        Table t;
        t.header = {"i", "normalized_time"};
        for (std::size_t i = 0; i < s.normalized_times.size(); ++i) {
            t.rows.push_back({fmt_int(static_cast<long long>(i)), fmt_real(s.normalized_times[i])});
        }
        t.document = {{"command", "return-times"},
                      {"parameters",
                       {{"system", system_name_},
                        {"prob", system.p},
                        {"depth", depth_},
                        {"samples", samples_},
                        {"seed", seed_},
                        {"mode", time_mode_}}},
                      {"cylinder_measure", s.cylinder_measure},
                      {"mean", m.mean},
                      {"standard_error", m.standard_error},
                      {"ks_exponential", ks},
                      {"normalized_times", s.normalized_times}};
        t.summary = std::to_string(s.sample_count) + " samples, mean " + fmt_real(m.mean) + ", KS " + fmt_real(ks);
        return t;
    }

    CLI::App app_;
    std::string out_path_;
    std::string format_name_;
    unsigned workers_ = default_workers();

    detail::HkOptions hk_;

    std::string beta_text_;
    real_ext beta_x_ = 1;
    real_ext beta_y_ = 0;
    int beta_digits_ = 20;
    int beta_horizon_ = 64;
    std::size_t orbit_steps_ = 0;
    std::size_t burn_in_ = 1000;
    std::uint64_t seed_ = 1;

    int max_period_ = 10;
    std::string rho_text_;
    std::string f_name_ = "square";
    double center_ = 0.6;
    double theta_ = 0.0;
    std::string mode_name_ = "min";

    std::string source_ = "sturmian";
    double prob_ = 0.5;
    std::string input_path_;
    int alphabet_ = 2;
    std::size_t length_ = 10000;
    std::size_t n_max_ = 10;
    bool bits_ = false;

    std::string system_name_ = "bernoulli";
    int depth_ = 10;
    std::size_t samples_ = 10000;
    std::string time_mode_ = "return";
    std::string word_text_;
};

/// Runs one CLI invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    Runner runner;
    return runner.run(args, out, err);
}

}  // namespace hkdyn::cli
