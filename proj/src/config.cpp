#include "mhdq/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "mhdq/datum.hpp"

namespace mhdq {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string where(const std::string& source, int line)
{
    return source + ":" + std::to_string(line) + ": ";
}

double to_double(const std::string& key, const std::string& v, const std::string& loc)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(loc + "key '" + key + "' expects a number, got '" + v + "'");
    return out;
}

long to_long(const std::string& key, const std::string& v, const std::string& loc)
{
    long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(loc + "key '" + key + "' expects an integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& v, const std::string& loc)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(loc + "key '" + key + "' expects true or false, got '" + v + "'");
}

std::string number(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key, const std::string& value,
                                   const std::string& loc)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto real = [](double ScenarioConfig::*field) {
            return Setter([field](ScenarioConfig& c, const std::string& k, const std::string& v, const std::string& loc) {
                c.*field = to_double(k, v, loc);
            });
        };
        auto integer = [](auto setter) {
            return Setter([setter](ScenarioConfig& c, const std::string& k, const std::string& v,
                                   const std::string& loc) { setter(c, to_long(k, v, loc)); });
        };
        auto boolean = [](bool ScenarioConfig::*field) {
            return Setter([field](ScenarioConfig& c, const std::string& k, const std::string& v, const std::string& loc) {
                c.*field = to_bool(k, v, loc);
            });
        };
        auto real_or_auto = [](auto getter) {
            return Setter([getter](ScenarioConfig& c, const std::string& k, const std::string& v,
                                   const std::string& loc) {
                getter(c) = v == "auto" ? std::numeric_limits<double>::quiet_NaN() : to_double(k, v, loc);
            });
        };

        t["domain"] = [](ScenarioConfig& c, const std::string& k, const std::string& v, const std::string& loc) {
            try {
                c.domain = domain_kind_from_string(v);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(loc + "key '" + k + "': " + e.what());
            }
        };
        t["n"] = integer([](ScenarioConfig& c, long n) { c.n = {int(n), int(n), int(n)}; });
        for (std::size_t a = 0; a < 3; ++a) {
            const std::string suffix = std::to_string(a + 1);
            t["n" + suffix] = integer([a](ScenarioConfig& c, long n) { c.n[a] = int(n); });
            t["L" + suffix] = real_or_auto([a](ScenarioConfig& c) -> double& { return c.L[a]; });
            t["center" + suffix] = real_or_auto([a](ScenarioConfig& c) -> double& { return c.center[a]; });
        }
        t["eos"] = [](ScenarioConfig& c, const std::string& k, const std::string& v, const std::string& loc) {
            if (v == "exponential") c.eos.kind = EquationOfState::Kind::exponential;
            else if (v == "polytropic") c.eos.kind = EquationOfState::Kind::polytropic;
            else throw ConfigError(loc + "key '" + k + "' expects exponential or polytropic, got '" + v + "'");
        };
        t["kappa"] = real_or_auto([](ScenarioConfig& c) -> double& { return c.eos.kappa; });
        t["gamma"] = real_or_auto([](ScenarioConfig& c) -> double& { return c.eos.gamma; });
        t["cv"] = real_or_auto([](ScenarioConfig& c) -> double& { return c.eos.cv; });
        t["c"] = real(&ScenarioConfig::c);
        t["background_p"] = real(&ScenarioConfig::background_p);
        t["datum"] = [](ScenarioConfig& c, const std::string&, const std::string& v, const std::string&) {
            c.datum = v;
        };
        t["amplitude"] = real(&ScenarioConfig::amplitude);
        t["width"] = real(&ScenarioConfig::width);
        t["cfl"] = real(&ScenarioConfig::cfl);
        t["epsilon"] = real(&ScenarioConfig::epsilon);
        t["t_end"] = real(&ScenarioConfig::t_end);
        t["max_steps"] = integer([](ScenarioConfig& c, long n) { c.max_steps = n; });
        t["output_every"] = integer([](ScenarioConfig& c, long n) { c.output_every = int(n); });
        t["output_dir"] = [](ScenarioConfig& c, const std::string&, const std::string& v, const std::string&) {
            c.output_dir = v;
        };
        t["require_compat"] = boolean(&ScenarioConfig::require_compat);
        t["seed"] = integer([](ScenarioConfig& c, long n) { c.seed = std::uint64_t(n); });
        t["serial_reductions"] = boolean(&ScenarioConfig::serial_reductions);
        t["compat_tol_factor"] = real(&ScenarioConfig::compat_tol_factor);
        t["h1_threshold"] = real_or_auto([](ScenarioConfig& c) -> double& { return c.h1_threshold; });
        t["h3_growth_factor"] = real(&ScenarioConfig::h3_growth_factor);
        t["divh_growth_coeff"] = real(&ScenarioConfig::divh_growth_coeff);
        return t;
    }();
    return table;
}

void validate(const ScenarioConfig& c, const std::string& source)
{
    auto fail = [&](const std::string& key, const std::string& why) {
        throw ConfigError(source + ": invalid value for '" + key + "': " + why);
    };
    if (c.c == 0.0) {
        fail("c", "the background normal field must be nonzero; well-posedness with c = 0 is an open case");
    }
    for (int a = 0; a < 3; ++a) {
        const std::string s = std::to_string(a + 1);
        if (!(c.L[std::size_t(a)] > 0.0)) fail("L" + s, "extents must be positive");
        if (c.n[std::size_t(a)] <= 0) fail("n" + s, "cell counts must be positive");
    }
    if (!(c.cfl > 0.0 && c.cfl <= 1.0)) fail("cfl", "must lie in (0, 1]");
    if (!(c.epsilon >= 0.0)) fail("epsilon", "must be >= 0");
    if (!(c.t_end > 0.0)) fail("t_end", "must be positive");
    if (c.max_steps < 0) fail("max_steps", "must be >= 0");
    if (c.output_every <= 0) fail("output_every", "must be positive");
    if (!(c.eos.kappa > 0.0)) fail("kappa", "must be positive");
    if (!(c.eos.gamma > 1.0)) fail("gamma", "must exceed 1");
    if (!(c.eos.cv > 0.0)) fail("cv", "must be positive");
    if (c.eos.kind == EquationOfState::Kind::polytropic && !(c.background_p > 0.0))
        fail("background_p", "the polytropic closure needs a positive background pressure");
    if (std::find(datum_presets().begin(), datum_presets().end(), c.datum) == datum_presets().end())
        fail("datum", "unknown preset '" + c.datum + "'");
    if (!(c.width > 0.0)) fail("width", "must be positive");
    if (!(c.compat_tol_factor > 0.0)) fail("compat_tol_factor", "must be positive");
    if (!(c.h3_growth_factor >= 1.0)) fail("h3_growth_factor", "must be >= 1");
    if (!(c.divh_growth_coeff > 0.0)) fail("divh_growth_coeff", "must be positive");
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text, const std::string& source)
{
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        const std::string loc = where(source, line);
        if (eq == std::string::npos) throw ConfigError(loc + "expected 'key = value', got '" + content + "'");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty()) throw ConfigError(loc + "missing key before '='");
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(loc + "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(loc + "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(loc + "key '" + key + "' has no value");
        it->second(cfg, key, value, loc);
    }
    validate(cfg, source);
    return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.string());
}

std::string ScenarioConfig::to_text() const
{
    std::ostringstream s;
    auto center_text = [](double v) { return std::isnan(v) ? std::string("auto") : number(v); };
    s << "domain = " << to_string(domain) << '\n';
    for (int a = 0; a < 3; ++a) s << 'L' << a + 1 << " = " << number(L[std::size_t(a)]) << '\n';
    for (int a = 0; a < 3; ++a) s << 'n' << a + 1 << " = " << n[std::size_t(a)] << '\n';
    s << "eos = " << eos.name() << '\n'
      << "kappa = " << number(eos.kappa) << '\n'
      << "gamma = " << number(eos.gamma) << '\n'
      << "cv = " << number(eos.cv) << '\n'
      << "c = " << number(c) << '\n'
      << "background_p = " << number(background_p) << '\n'
      << "datum = " << datum << '\n'
      << "amplitude = " << number(amplitude) << '\n'
      << "width = " << number(width) << '\n';
    for (int a = 0; a < 3; ++a) s << "center" << a + 1 << " = " << center_text(center[std::size_t(a)]) << '\n';
    s << "cfl = " << number(cfl) << '\n'
      << "epsilon = " << number(epsilon) << '\n'
      << "t_end = " << number(t_end) << '\n'
      << "max_steps = " << max_steps << '\n'
      << "output_every = " << output_every << '\n'
      << "output_dir = " << output_dir << '\n'
      << "require_compat = " << (require_compat ? "true" : "false") << '\n'
      << "seed = " << seed << '\n'
      << "serial_reductions = " << (serial_reductions ? "true" : "false") << '\n'
      << "compat_tol_factor = " << number(compat_tol_factor) << '\n'
      << "h1_threshold = " << (std::isnan(h1_threshold) ? std::string("auto") : number(h1_threshold)) << '\n'
      << "h3_growth_factor = " << number(h3_growth_factor) << '\n'
      << "divh_growth_coeff = " << number(divh_growth_coeff) << '\n';
    return s.str();
}

std::string config_help()
{
    return R"(Scenario config: one 'key = value' per line, '#' starts a comment.
Unknown keys are errors.

  domain            quarter | half | periodic            (quarter)
  n                 sets n1 = n2 = n3
  n1, n2, n3        cell counts                          (32, 16, 32)
  L1, L2, L3        box extents                          (1, 0.5, 1)
                    A half run reflects the quarter box across x3 = 0:
                    x3 in [-L3, L3] with 2 n3 cells.
  eos               exponential | polytropic             (exponential)
  kappa             exponential scale                    (1)
  gamma, cv         polytropic exponent and heat capacity (5/3, 1)
  c                 background field H = (c, 0, 0), nonzero (1)
  background_p      background pressure; > 0 for polytropic (0)
  datum             constant | interior-bump | symmetric-perturbation | alfven-periodic
                                                         (interior-bump)
  amplitude, width  perturbation amplitude and support radius (0.01, 0.24)
  center1..3        perturbation center, or auto         (auto)
  cfl               Courant number in (0, 1]             (0.5)
  epsilon           fourth-difference dissipation        (0.02)
  t_end             final time                           (1)
  max_steps         step limit, 0 = none                 (0)
  output_every      diagnostics/snapshot cadence in steps (10)
  output_dir        output directory                     (mhdq_out)
  require_compat    reject data failing check-compat     (true)
  seed              seed for randomized suites           (1)
  serial_reductions left-to-right reductions             (false)
  compat_tol_factor tolerance = factor * h^2 * magnitude (10)
  h1_threshold      lower bound for |H1| on x1 = 0, or auto = 0.1|c| (auto)
  h3_growth_factor  allowed H^3-norm growth in 'run'     (2)
  divh_growth_coeff allowed div H growth = coeff * h^2   (10)

Environment: MHDQ_THREADS caps the worker count (0 = serial).
)";
}

}  // namespace mhdq
