#include "mbfem/config.hpp"

#include "mbfem/errors.hpp"
#include "mbfem/spline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <tuple>
#include <sstream>

namespace mbfem {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

double to_double(std::string_view text, const std::string& field, int line) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ParseError("'" + std::string(text) + "' is not a number for " + field, line);
    }
    return value;
}

int to_int(std::string_view text, const std::string& field, int line) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ParseError("'" + std::string(text) + "' is not an integer for " + field, line);
    }
    return value;
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        parts.push_back(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return parts;
}

struct Entry {
    std::string value;
    int line;
};

}  // namespace

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig config;
    config.base_dir = base_dir;
    bool seen_problem = false, seen_nt = false, seen_k = false, seen_delta = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        for (const auto& token : split_words(strip_comment(raw))) {
            const auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw ParseError("expected key=value, got '" + token + "'", line_no);
            }
            const std::string key = token.substr(0, eq);
            const std::string_view value = std::string_view(token).substr(eq + 1);
            if (value.empty()) {
                throw ParseError("empty value for " + key, line_no);
            }
            if (key == "problem") {
                config.problem = std::string(value);
                seen_problem = true;
            } else if (key == "nt") {
                config.nt = to_int(value, key, line_no);
                seen_nt = true;
            } else if (key == "k") {
                config.k = to_int(value, key, line_no);
                seen_k = true;
            } else if (key == "q") {
                config.q = to_int(value, key, line_no);
            } else if (key == "delta") {
                config.delta = to_double(value, key, line_no);
                seen_delta = true;
            } else if (key == "T") {
                config.final_time = to_double(value, key, line_no);
            } else if (key == "snapshot") {
                for (auto part : split_commas(value)) {
                    config.snapshots.push_back(to_double(part, key, line_no));
                }
            } else if (key == "out") {
                config.out = std::string(value);
            } else if (key == "moving") {
                if (value != "0" && value != "1") {
                    throw ParseError("moving must be 0 or 1", line_no);
                }
                config.emit_moving = value == "1";
            } else if (key == "motion") {
                if (value == "matched") {
                    config.example1_motion = Example1Motion::matched;
                } else if (value == "wide") {
                    config.example1_motion = Example1Motion::wide;
                } else {
                    throw ParseError("motion must be matched or wide", line_no);
                }
            } else if (key == "study.axis") {
                try {
                    config.study_axis = parse_axis(std::string(value));
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), line_no);
                }
            } else if (key == "study.k") {
                for (auto part : split_commas(value)) {
                    config.study_degrees.push_back(to_int(part, key, line_no));
                }
            } else if (key == "study.nt") {
                for (auto part : split_commas(value)) {
                    config.study_element_counts.push_back(to_int(part, key, line_no));
                }
            } else if (key == "study.delta") {
                for (auto part : split_commas(value)) {
                    config.study_deltas.push_back(to_double(part, key, line_no));
                }
            } else {
                throw ParseError("unknown key '" + key + "'", line_no);
            }
        }
    }

    if (!seen_problem) throw std::invalid_argument("missing required field: problem");
    if (!seen_nt) throw std::invalid_argument("missing required field: nt");
    if (!seen_k) throw std::invalid_argument("missing required field: k");
    if (!seen_delta) throw std::invalid_argument("missing required field: delta");
    if (config.nt < 1) throw std::invalid_argument("field nt must be >= 1");
    if (config.k < 1) throw std::invalid_argument("field k must be >= 1");
    if (config.q == 0) config.q = config.k + 2;
    if (config.q < config.k + 1) throw std::invalid_argument("field q must be >= k + 1");
    if (!(config.delta > 0.0) || !std::isfinite(config.delta)) {
        throw std::invalid_argument("field delta must be positive");
    }
    if (config.final_time && !(*config.final_time > 0.0)) {
        throw std::invalid_argument("field T must be positive");
    }
    for (const int k : config.study_degrees) {
        if (k < 1) throw std::invalid_argument("field study.k must be >= 1");
    }
    for (const int nt : config.study_element_counts) {
        if (nt < 1) throw std::invalid_argument("field study.nt must be >= 1");
    }
    for (const double d : config.study_deltas) {
        if (!(d > 0.0)) throw std::invalid_argument("field study.delta must be positive");
    }
    if (config.study_degrees.empty()) config.study_degrees = {config.k};
    if (config.study_element_counts.empty()) config.study_element_counts = {config.nt};
    if (config.study_deltas.empty()) config.study_deltas = {config.delta};

    const double T = resolve_problem(config).final_time();
    for (const double s : config.snapshots) {
        if (!(s >= 0.0 && s <= T * (1.0 + 1e-12))) {
            std::ostringstream msg;
            msg << "field snapshot: time " << s << " outside [0, " << T << "]";
            throw std::invalid_argument(msg.str());
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.has_parent_path() ? path.parent_path() : ".");
}

ProblemSpec resolve_problem(const RunConfig& config) {
    ProblemSpec problem;
    if (config.problem == "example1") {
        problem = example1(config.example1_motion);
    } else if (config.problem == "example2") {
        problem = example2();
    } else {
        std::filesystem::path path = config.problem;
        if (path.is_relative()) path = config.base_dir / path;
        problem = load_problem(path);
    }
    if (config.final_time) {
        problem = with_final_time(std::move(problem), *config.final_time);
    }
    return problem;
}

// ---------------------------------------------------------------------------
// Problem catalog

namespace {

std::vector<double> numbers(const std::vector<std::string>& words, std::size_t from,
                            const std::string& field, int line) {
    std::vector<double> out;
    for (std::size_t i = from; i < words.size(); ++i) {
        out.push_back(to_double(words[i], field, line));
    }
    return out;
}

double horner(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
}

double horner_prime(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t p = c.size(); p-- > 1;) v = v * t + static_cast<double>(p) * c[p];
    return v;
}

/// Rational curve num(t) / den(t) and its derivative.
std::pair<ScalarFn, ScalarFn> parse_curve(const std::string& value, const std::string& field,
                                          int line) {
    const auto words = split_words(value);
    if (words.empty()) throw ParseError("empty curve for " + field, line);
    std::vector<double> num, den{1.0};
    if (words[0] == "poly") {
        num = numbers(words, 1, field, line);
    } else if (words[0] == "rational") {
        std::size_t slash = 1;
        while (slash < words.size() && words[slash] != "/") ++slash;
        if (slash == words.size()) throw ParseError("rational curve needs '/' in " + field, line);
        num = numbers(std::vector<std::string>(words.begin(), words.begin() + slash), 1, field, line);
        den = numbers(words, slash + 1, field, line);
    } else {
        throw ParseError("unknown curve family '" + words[0] + "' for " + field, line);
    }
    if (num.empty() || den.empty()) throw ParseError("curve needs coefficients for " + field, line);
    ScalarFn f = [num, den](double t) { return horner(num, t) / horner(den, t); };
    ScalarFn fp = [num, den](double t) {
        const double d = horner(den, t);
        return (horner_prime(num, t) * d - horner(num, t) * horner_prime(den, t)) / (d * d);
    };
    return {f, fp};
}

struct LawSpec {
    std::string family;
    std::vector<double> c;
};

DiffusionLaw parse_law(const std::string& value, int ne, const std::string& field, int line,
                       LawSpec& spec) {
    const auto words = split_words(value);
    if (words.empty()) throw ParseError("empty diffusion law for " + field, line);
    spec.family = words[0];
    spec.c = numbers(words, 1, field, line);
    DiffusionLaw law;
    if (spec.family == "constant") {
        if (spec.c.size() != 1) throw ParseError("constant law takes one value", line);
        const double c = spec.c[0];
        law.fn = [c](std::span<const double>) { return c; };
    } else if (spec.family == "rational" || spec.family == "exponential") {
        if (static_cast<int>(spec.c.size()) != ne + 1) {
            throw ParseError(spec.family + " law takes ne + 1 coefficients", line);
        }
        const auto c = spec.c;
        if (spec.family == "rational") {
            law.fn = [c](std::span<const double> s) {
                double a = c[0];
                for (std::size_t j = 0; j < s.size(); ++j) a += c[j + 1] / (1.0 + s[j] * s[j]);
                return a;
            };
        } else {
            law.fn = [c](std::span<const double> s) {
                double a = c[0];
                for (std::size_t j = 0; j < s.size(); ++j) a += c[j + 1] * std::exp(-s[j] * s[j]);
                return a;
            };
        }
    } else {
        throw ParseError("unknown diffusion family '" + spec.family + "'", line);
    }
    return law;
}

std::function<double(double, double)> parse_term(const std::string& value, int line) {
    const auto w = split_words(value);
    std::size_t i = 0;
    auto need = [&](const char* what) -> const std::string& {
        if (i >= w.size()) throw ParseError(std::string("forcing term missing ") + what, line);
        return w[i++];
    };
    const double coef = to_double(need("coefficient"), "forcing", line);

    std::function<double(double)> xf;
    const std::string xkind = need("x factor");
    if (xkind == "one") {
        xf = [](double) { return 1.0; };
    } else {
        const double p = to_double(need("x factor parameter"), "forcing", line);
        if (xkind == "pow") xf = [p](double x) { return std::pow(x, p); };
        else if (xkind == "gauss") xf = [p](double x) { return std::exp(-p * x * x); };
        else if (xkind == "sin") xf = [p](double x) { return std::sin(p * x); };
        else throw ParseError("unknown x factor '" + xkind + "'", line);
    }

    std::function<double(double)> tf;
    const std::string tkind = need("t factor");
    if (tkind == "one") {
        tf = [](double) { return 1.0; };
    } else {
        const double p = to_double(need("t factor parameter"), "forcing", line);
        if (tkind == "shiftpow") tf = [p](double t) { return std::pow(1.0 + t, p); };
        else if (tkind == "exp") tf = [p](double t) { return std::exp(p * t); };
        else throw ParseError("unknown t factor '" + tkind + "'", line);
    }
    if (i != w.size()) throw ParseError("trailing tokens in forcing term", line);
    return [coef, xf, tf](double x, double t) { return coef * xf(x) * tf(t); };
}

int equation_index(const std::string& key, const std::string& prefix, int ne, int line) {
    const int i = to_int(std::string_view(key).substr(prefix.size()), key, line);
    if (i < 1 || i > ne) {
        throw ParseError(key + ": equation index out of range 1.." + std::to_string(ne), line);
    }
    return i - 1;
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
    std::multimap<std::string, Entry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError("expected key=value", line_no);
        }
        entries.emplace(std::string(trim(line.substr(0, eq))),
                        Entry{std::string(trim(line.substr(eq + 1))), line_no});
    }
    auto single = [&](const std::string& key) -> const Entry* {
        const auto count = entries.count(key);
        if (count > 1) throw ParseError("duplicate key " + key, entries.find(key)->second.line);
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto required = [&](const std::string& key) -> const Entry& {
        const Entry* e = single(key);
        if (!e) throw std::invalid_argument("problem file: missing required field " + key);
        return *e;
    };

    ProblemSpec p;
    p.name = single("name") ? single("name")->value : "custom";
    p.ne = to_int(required("ne").value, "ne", required("ne").line);
    if (p.ne < 1) throw std::invalid_argument("problem file: ne must be >= 1");
    const double T = to_double(required("T").value, "T", required("T").line);
    if (!(T > 0.0)) throw std::invalid_argument("problem file: T must be positive");

    const auto& alpha = required("alpha");
    const auto& beta = required("beta");
    std::tie(p.motion.alpha, p.motion.alpha_prime) = parse_curve(alpha.value, "alpha", alpha.line);
    std::tie(p.motion.beta, p.motion.beta_prime) = parse_curve(beta.value, "beta", beta.line);
    p.motion.final_time = T;

    if (const Entry* probe = single("probe")) {
        const auto v = numbers(split_words(probe->value), 0, "probe", probe->line);
        if (v.size() != 2 || !(v[0] < v[1])) throw ParseError("probe needs lo < hi", probe->line);
        p.nonlocal_probe = {v[0], v[1]};
    }

    p.diffusion.resize(p.ne);
    p.forcing.resize(p.ne);
    p.initial.resize(p.ne);
    std::vector<LawSpec> laws(p.ne);
    std::vector<std::vector<std::function<double(double, double)>>> terms(p.ne);
    std::vector<bool> have_law(p.ne, false), have_initial(p.ne, false);
    std::vector<std::optional<double>> heat_amplitude(p.ne);

    for (const auto& [key, entry] : entries) {
        if (key.rfind("diffusion.", 0) == 0) {
            const int i = equation_index(key, "diffusion.", p.ne, entry.line);
            if (have_law[i]) throw ParseError("duplicate key " + key, entry.line);
            p.diffusion[i] = parse_law(entry.value, p.ne, key, entry.line, laws[i]);
            have_law[i] = true;
        } else if (key.rfind("forcing.", 0) == 0) {
            const int i = equation_index(key, "forcing.", p.ne, entry.line);
            terms[i].push_back(parse_term(entry.value, entry.line));
        } else if (key.rfind("initial.", 0) == 0) {
            const int i = equation_index(key, "initial.", p.ne, entry.line);
            if (have_initial[i]) throw ParseError("duplicate key " + key, entry.line);
            const auto w = split_words(entry.value);
            if (w.empty()) throw ParseError("empty initial profile", entry.line);
            const auto c = numbers(w, 1, key, entry.line);
            if (w[0] == "spline") {
                if (c.size() % 2 != 0) throw ParseError("spline needs x v pairs", entry.line);
                std::vector<NaturalCubicSpline::Knot> knots;
                for (std::size_t j = 0; j < c.size(); j += 2) knots.emplace_back(c[j], c[j + 1]);
                try {
                    auto s = std::make_shared<const NaturalCubicSpline>(knots);
                    p.initial[i] = [s](double x) { return (*s)(x); };
                } catch (const std::invalid_argument& e) {
                    throw ParseError(e.what(), entry.line);
                }
            } else if (w[0] == "sine") {
                if (c.size() != 1) throw ParseError("sine takes one amplitude", entry.line);
                const double amp = c[0];
                const double a0 = p.motion.alpha(0.0);
                const double g0 = p.motion.beta(0.0) - a0;
                p.initial[i] = [amp, a0, g0](double x) {
                    return amp * std::sin(std::numbers::pi * (x - a0) / g0);
                };
            } else if (w[0] == "poly") {
                p.initial[i] = [c](double x) { return horner(c, x); };
            } else {
                throw ParseError("unknown initial profile '" + w[0] + "'", entry.line);
            }
            have_initial[i] = true;
        } else if (key.rfind("exact.", 0) == 0) {
            const int i = equation_index(key, "exact.", p.ne, entry.line);
            const auto w = split_words(entry.value);
            if (w.size() != 2 || w[0] != "heat") {
                throw ParseError("exact solutions support only 'heat A'", entry.line);
            }
            heat_amplitude[i] = to_double(w[1], key, entry.line);
        } else if (key.rfind("bounds.", 0) == 0) {
            // applied below, after the laws exist
        } else if (key != "name" && key != "ne" && key != "T" && key != "alpha" &&
                   key != "beta" && key != "probe") {
            throw ParseError("unknown key '" + key + "'", entry.line);
        }
    }

    for (int i = 0; i < p.ne; ++i) {
        const std::string n = std::to_string(i + 1);
        if (!have_law[i]) throw std::invalid_argument("problem file: missing diffusion." + n);
        if (!have_initial[i]) throw std::invalid_argument("problem file: missing initial." + n);
        if (const Entry* b = single("bounds." + n)) {
            const auto v = numbers(split_words(b->value), 0, "bounds." + n, b->line);
            if (v.size() != 2 || !(v[0] > 0.0) || !(v[0] <= v[1])) {
                throw ParseError("bounds need 0 < lower <= upper", b->line);
            }
            p.diffusion[i].lower = v[0];
            p.diffusion[i].upper = v[1];
        }
        auto sum = std::make_shared<std::vector<std::function<double(double, double)>>>(terms[i]);
        p.forcing[i] = [sum](double x, double t) {
            double f = 0.0;
            for (const auto& term : *sum) f += term(x, t);
            return f;
        };
    }

    const bool any_exact = std::any_of(heat_amplitude.begin(), heat_amplitude.end(),
                                       [](const auto& a) { return a.has_value(); });
    if (any_exact) {
        const double a0 = p.motion.alpha(0.0);
        const double b0 = p.motion.beta(0.0);
        for (int i = 0; i < p.ne; ++i) {
            if (!heat_amplitude[i]) {
                throw std::invalid_argument("problem file: exact solutions must be given for all equations");
            }
            if (laws[i].family != "constant") {
                throw std::invalid_argument("problem file: exact heat mode needs a constant diffusion law");
            }
            for (double t : {0.0, 0.5 * T, T}) {
                if (p.motion.alpha(t) != a0 || p.motion.beta(t) != b0) {
                    throw std::invalid_argument("problem file: exact heat mode needs fixed boundaries");
                }
            }
            const double amp = *heat_amplitude[i];
            const double c = laws[i].c[0];
            const double width = b0 - a0;
            const double rate = c * std::numbers::pi * std::numbers::pi / (width * width);
            p.exact.emplace_back([amp, rate, a0, width](double x, double t) {
                return amp * std::exp(-rate * t) * std::sin(std::numbers::pi * (x - a0) / width);
            });
        }
    }
    p.check_shape();
    return p;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read problem file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

}  // namespace mbfem
