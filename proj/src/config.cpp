#include "vtwa/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace vtwa {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError(key + ": expected a finite number, got '" + text + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

std::string join_strings(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

struct Field {
    std::function<void(Config&, const std::string&, const std::string&)> set;
    std::function<std::string(const Config&)> get;
};

template <class T>
Field real_field(T Config::*member) {
    return {[member](Config& c, const std::string& k, const std::string& v) { c.*member = parse_double(k, v); },
            [member](const Config& c) { return format_number(c.*member); }};
}

template <class T>
Field uint_field(T Config::*member) {
    return {[member](Config& c, const std::string& k, const std::string& v) {
                c.*member = static_cast<T>(parse_uint(k, v));
            },
            [member](const Config& c) { return std::to_string(c.*member); }};
}

Field bool_field(bool Config::*member) {
    return {[member](Config& c, const std::string& k, const std::string& v) { c.*member = parse_bool(k, v); },
            [member](const Config& c) { return std::string(c.*member ? "true" : "false"); }};
}

Field list_field(std::vector<double> Config::*member) {
    return {[member](Config& c, const std::string& k, const std::string& v) { c.*member = parse_doubles(k, v); },
            [member](const Config& c) { return join_doubles(c.*member); }};
}

const std::map<std::string, Field>& field_table() {
    static const std::map<std::string, Field> table = {
        {"model.g", real_field(&Config::g)},
        {"state.x0", real_field(&Config::x0)},
        {"state.p0", real_field(&Config::p0)},
        {"state.sigma_x", real_field(&Config::sigma_x)},
        {"state.sigma_p", real_field(&Config::sigma_p)},
        {"time.t_max", real_field(&Config::t_max)},
        {"time.dt", real_field(&Config::dt)},
        {"time.output_every", real_field(&Config::output_every)},
        {"grid.x_min", real_field(&Config::x_min)},
        {"grid.x_max", real_field(&Config::x_max)},
        {"grid.p_min", real_field(&Config::p_min)},
        {"grid.p_max", real_field(&Config::p_max)},
        {"grid.n_x", uint_field(&Config::n_x)},
        {"grid.n_p", uint_field(&Config::n_p)},
        {"ensemble.n", uint_field(&Config::ensemble_n)},
        {"ensemble.seed", uint_field(&Config::ensemble_seed)},
        {"ensemble.twa_max_blowup", real_field(&Config::twa_max_blowup)},
        {"fit.t_lo", real_field(&Config::fit_t_lo)},
        {"fit.t_hi", real_field(&Config::fit_t_hi)},
        {"fit.n_points", uint_field(&Config::fit_points)},
        {"distance.times", list_field(&Config::distance_times)},
        {"distance.floor", real_field(&Config::distance_floor)},
        {"distance.gate_scaling", bool_field(&Config::gate_scaling)},
        {"methods",
         {[](Config& c, const std::string& k, const std::string& v) {
              auto items = split_list(v);
              for (const auto& m : items)
                  if (m != "exact" && m != "twa" && m != "vtwa")
                      throw ConfigError(k + ": unknown method '" + m + "'");
              c.methods = std::move(items);
          },
          [](const Config& c) { return join_strings(c.methods); }}},
        {"exact.n_levels", uint_field(&Config::n_levels)},
        {"exact.y_points", uint_field(&Config::y_points)},
        {"exact.y_max", real_field(&Config::y_max)},
        {"exact.dt", real_field(&Config::exact_dt)},
        {"exact.convergence_check", bool_field(&Config::convergence_check)},
        {"exact.convergence_tol", real_field(&Config::convergence_tol)},
        {"snapshots.times", list_field(&Config::snapshot_times)},
        {"verify.n_tuples", uint_field(&Config::verify_tuples)},
        {"verify.seed", uint_field(&Config::verify_seed)},
        {"verify.tolerance", real_field(&Config::verify_tolerance)},
        {"verify.fixed_g",
         {[](Config& c, const std::string& k, const std::string& v) {
              if (trim(v).empty() || trim(v) == "none")
                  c.verify_fixed_g.reset();
              else
                  c.verify_fixed_g = parse_double(k, v);
          },
          [](const Config& c) {
              return c.verify_fixed_g ? format_number(*c.verify_fixed_g) : std::string("none");
          }}},
        {"sweep.axis",
         {[](Config& c, const std::string& k, const std::string& v) {
              const auto a = trim(v);
              if (a != "g" && a != "x0" && a != "sigma_scale")
                  throw ConfigError(k + ": expected g, x0 or sigma_scale");
              c.sweep_axis = a;
          },
          [](const Config& c) { return c.sweep_axis; }}},
        {"sweep.values", list_field(&Config::sweep_values)},
    };
    return table;
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
    const auto& table = field_table();
    const auto it = table.find(trim(key));
    if (it == table.end()) throw ConfigError("unknown configuration key '" + key + "'");
    it->second.set(*this, it->first, value);
}

void Config::load_text(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        set(line.substr(0, eq), line.substr(eq + 1));
    }
}

void Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    load_text(buf.str());
}

std::map<std::string, std::string> Config::entries() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, field] : field_table()) out[key] = field.get(*this);
    return out;
}

std::vector<std::string> Config::keys() {
    std::vector<std::string> out;
    for (const auto& [key, field] : field_table()) out.push_back(key);
    return out;
}

GaussianWignerState Config::state() const { return {x0, p0, sigma_x, sigma_p}; }
QuarticModel Config::model() const { return QuarticModel(g); }
PhaseGrid Config::grid() const { return {x_min, x_max, n_x, p_min, p_max, n_p}; }

bool Config::has_method(const std::string& m) const {
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

}  // namespace vtwa
