#include "unitlinked/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "unitlinked/io.hpp"

namespace unitlinked {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        else if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

struct ParseContext {
    const std::string& source;
    std::size_t line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument(source + ":" + std::to_string(line) + ": " +
                                    msg);
    }
};

double parse_double(const std::string& text, const ParseContext& ctx) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        ctx.fail("not a number: '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, const ParseContext& ctx) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        ctx.fail("not a non-negative integer: '" + text + "'");
    return v;
}

bool parse_bool(const std::string& text, const ParseContext& ctx) {
    if (text == "true") return true;
    if (text == "false") return false;
    ctx.fail("expected true or false, got '" + text + "'");
}

std::string parse_string(const std::string& text, const ParseContext& ctx) {
    if (text.size() < 2 || text.front() != '"' || text.back() != '"')
        ctx.fail("expected a quoted string, got '" + text + "'");
    const std::string inner = text.substr(1, text.size() - 2);
    if (inner.find('"') != std::string::npos)
        ctx.fail("embedded quotes are not supported");
    return inner;
}

std::vector<double> parse_double_array(const std::string& text,
                                       const ParseContext& ctx) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        ctx.fail("expected a one-line array, got '" + text + "'");
    std::vector<double> values;
    const std::string inner = trim(text.substr(1, text.size() - 2));
    if (inner.empty()) return values;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ','))
        values.push_back(parse_double(trim(item), ctx));
    return values;
}

using Setter = std::function<void(ParsedRunConfig&, const std::string&,
                                  const ParseContext&)>;

struct SchemaEntry {
    const char* section;
    const char* key;
    Setter set;
};

Setter set_double(double RunConfig::* field) {
    return [field](ParsedRunConfig& p, const std::string& v,
                   const ParseContext& ctx) {
        p.config.*field = parse_double(v, ctx);
    };
}

Setter set_array(std::vector<double> RunConfig::* field) {
    return [field](ParsedRunConfig& p, const std::string& v,
                   const ParseContext& ctx) {
        p.config.*field = parse_double_array(v, ctx);
    };
}

Setter set_bool(bool RunConfig::* field) {
    return [field](ParsedRunConfig& p, const std::string& v,
                   const ParseContext& ctx) {
        p.config.*field = parse_bool(v, ctx);
    };
}

Setter set_string(std::string RunConfig::* field) {
    return [field](ParsedRunConfig& p, const std::string& v,
                   const ParseContext& ctx) {
        p.config.*field = parse_string(v, ctx);
    };
}

template <class Sub>
Setter set_nested(Sub RunConfig::* sub, double Sub::* field) {
    return [sub, field](ParsedRunConfig& p, const std::string& v,
                        const ParseContext& ctx) {
        p.config.*sub.*field = parse_double(v, ctx);
    };
}

const std::vector<SchemaEntry>& schema() {
    static const std::vector<SchemaEntry> entries = {
        {"vasicek", "k", set_nested(&RunConfig::vasicek, &VasicekParams::k)},
        {"vasicek", "theta", set_nested(&RunConfig::vasicek, &VasicekParams::theta)},
        {"vasicek", "sigma", set_nested(&RunConfig::vasicek, &VasicekParams::sigma)},
        {"vasicek", "r0", set_nested(&RunConfig::vasicek, &VasicekParams::r0)},
        {"heston", "kappa", set_nested(&RunConfig::heston, &HestonParams::kappa)},
        {"heston", "nu_bar", set_nested(&RunConfig::heston, &HestonParams::nu_bar)},
        {"heston", "eta", set_nested(&RunConfig::heston, &HestonParams::eta)},
        {"heston", "nu0", set_nested(&RunConfig::heston, &HestonParams::nu0)},
        {"heston", "mu", set_nested(&RunConfig::heston, &HestonParams::mu)},
        {"heston", "s0", set_nested(&RunConfig::heston, &HestonParams::s0)},
        {"blackscholes", "s0",
         set_nested(&RunConfig::blackscholes, &BlackScholesParams::s0)},
        {"blackscholes", "r",
         set_nested(&RunConfig::blackscholes, &BlackScholesParams::r)},
        {"blackscholes", "sigma",
         set_nested(&RunConfig::blackscholes, &BlackScholesParams::sigma)},
        {"policy", "age", set_double(&RunConfig::age)},
        {"policy", "ages", set_array(&RunConfig::ages)},
        {"policy", "guarantee", set_double(&RunConfig::guarantee)},
        {"policy", "guarantees", set_array(&RunConfig::guarantees)},
        {"policy", "guarantee_death", set_double(&RunConfig::guarantee_death)},
        {"policy", "death_benefit", set_bool(&RunConfig::death_benefit)},
        {"policy", "strict_printed_formula",
         set_bool(&RunConfig::strict_printed_formula)},
        {"policy", "maturities", set_array(&RunConfig::maturities)},
        {"mc", "paths",
         [](ParsedRunConfig& p, const std::string& v, const ParseContext& ctx) {
             p.config.paths = static_cast<std::size_t>(parse_u64(v, ctx));
         }},
        {"mc", "steps",
         [](ParsedRunConfig& p, const std::string& v, const ParseContext& ctx) {
             p.config.steps = static_cast<std::size_t>(parse_u64(v, ctx));
         }},
        {"mc", "seed",
         [](ParsedRunConfig& p, const std::string& v, const ParseContext& ctx) {
             p.config.seed = parse_u64(v, ctx);
             p.seed_in_file = true;
         }},
        {"mortality", "table", set_string(&RunConfig::mortality_table)},
        {"mortality", "window_lo", set_double(&RunConfig::window_lo)},
        {"mortality", "window_hi", set_double(&RunConfig::window_hi)},
        {"output", "dir", set_string(&RunConfig::out_dir)},
    };
    return entries;
}

bool known_section(const std::string& name) {
    for (const auto& e : schema())
        if (name == e.section) return true;
    return false;
}

const SchemaEntry* find_entry(const std::string& section,
                              const std::string& key) {
    for (const auto& e : schema())
        if (section == e.section && key == e.key) return &e;
    return nullptr;
}

}  // namespace

ParsedRunConfig parse_run_config(const std::string& text,
                                 const std::string& source_name) {
    ParsedRunConfig parsed;
    ParseContext ctx{source_name};
    std::string section;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;

    std::stringstream ss(text);
    std::string raw;
    while (std::getline(ss, raw)) {
        ++ctx.line;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') ctx.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section)) ctx.fail("unknown section [" + section + "]");
            if (!seen_sections.insert(section).second)
                ctx.fail("duplicate section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) ctx.fail("expected key = value");
        if (section.empty()) ctx.fail("key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) ctx.fail("empty key");
        if (value.empty()) ctx.fail("empty value for key '" + key + "'");
        const SchemaEntry* entry = find_entry(section, key);
        if (!entry) ctx.fail("unknown key [" + section + "]." + key);
        if (!seen_keys.insert(section + "." + key).second)
            ctx.fail("duplicate key [" + section + "]." + key);
        entry->set(parsed, value, ctx);
    }
    return parsed;
}

ParsedRunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    ParsedRunConfig parsed = parse_run_config(buffer.str(), path);
    namespace fs = std::filesystem;
    std::string& table = parsed.config.mortality_table;
    if (!table.empty() && fs::path(table).is_relative())
        table = (fs::absolute(fs::path(path).parent_path()) / table)
                    .lexically_normal()
                    .string();
    return parsed;
}

void RunConfig::validate() const {
    vasicek.validate();
    heston.validate();
    blackscholes.validate();
    const auto bad = [](const char* what) {
        throw std::invalid_argument(std::string("config: ") + what);
    };
    if (!(std::isfinite(age) && age >= 0.0)) bad("age must be >= 0");
    if (!(std::isfinite(guarantee) && guarantee > 0.0)) bad("guarantee must be > 0");
    if (!(std::isfinite(guarantee_death) && guarantee_death > 0.0))
        bad("guarantee_death must be > 0");
    for (double a : ages)
        if (!(std::isfinite(a) && a >= 0.0)) bad("ages must all be >= 0");
    for (double g : guarantees)
        if (!(std::isfinite(g) && g > 0.0)) bad("guarantees must all be > 0");
    for (double T : maturities)
        if (!(std::isfinite(T) && T > 0.0)) bad("maturities must all be > 0");
    if (paths < 2) bad("paths must be >= 2");
    if (!(window_lo <= window_hi)) bad("mortality window is empty");
    if (out_dir.empty()) bad("output directory must not be empty");
}

std::string RunConfig::to_toml() const {
    const auto arr = [](const std::vector<double>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += format_double(v[i]);
        }
        return s + "]";
    };
    std::string s;
    s += "[vasicek]\n";
    s += "k = " + format_double(vasicek.k) + "\n";
    s += "theta = " + format_double(vasicek.theta) + "\n";
    s += "sigma = " + format_double(vasicek.sigma) + "\n";
    s += "r0 = " + format_double(vasicek.r0) + "\n\n";
    s += "[heston]\n";
    s += "kappa = " + format_double(heston.kappa) + "\n";
    s += "nu_bar = " + format_double(heston.nu_bar) + "\n";
    s += "eta = " + format_double(heston.eta) + "\n";
    s += "nu0 = " + format_double(heston.nu0) + "\n";
    s += "mu = " + format_double(heston.mu) + "\n";
    s += "s0 = " + format_double(heston.s0) + "\n\n";
    s += "[blackscholes]\n";
    s += "s0 = " + format_double(blackscholes.s0) + "\n";
    s += "r = " + format_double(blackscholes.r) + "\n";
    s += "sigma = " + format_double(blackscholes.sigma) + "\n\n";
    s += "[policy]\n";
    s += "age = " + format_double(age) + "\n";
    s += "ages = " + arr(ages) + "\n";
    s += "guarantee = " + format_double(guarantee) + "\n";
    s += "guarantees = " + arr(guarantees) + "\n";
    s += "guarantee_death = " + format_double(guarantee_death) + "\n";
    s += std::string("death_benefit = ") + (death_benefit ? "true" : "false") + "\n";
    s += std::string("strict_printed_formula = ") +
         (strict_printed_formula ? "true" : "false") + "\n";
    s += "maturities = " + arr(maturities) + "\n\n";
    s += "[mc]\n";
    s += "paths = " + std::to_string(paths) + "\n";
    s += "steps = " + std::to_string(steps) + "\n";
    s += "seed = " + std::to_string(seed) + "\n\n";
    s += "[mortality]\n";
    s += "table = \"" + mortality_table + "\"\n";
    s += "window_lo = " + format_double(window_lo) + "\n";
    s += "window_hi = " + format_double(window_hi) + "\n\n";
    s += "[output]\n";
    s += "dir = \"" + out_dir + "\"\n";
    return s;
}

}  // namespace unitlinked
