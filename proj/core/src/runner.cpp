#include "bergman/runner.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/inequalities.hpp"
#include "bergman/moments.hpp"
#include "bergman/operators.hpp"
#include "bergman/rng.hpp"
#include "bergman/sobolev.hpp"

namespace bergman::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& why) {
    throw FormatError(name + ":" + std::to_string(line) + ": " + why);
}

int to_int(const std::string& s, const std::string& name, int line) {
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        parse_fail(name, line, "expected an integer, got '" + s + "'");
    }
}

double to_double(const std::string& s, const std::string& name, int line) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        parse_fail(name, line, "expected a number, got '" + s + "'");
    }
}

MultiIndex parse_beta(const std::vector<std::string>& tok, size_t begin, size_t end,
                      const std::string& name, int line) {
    std::vector<int> e;
    for (size_t i = begin; i < end; ++i) e.push_back(to_int(tok[i], name, line));
    if (e.empty()) parse_fail(name, line, "expected multi-index components");
    for (int v : e) {
        if (v < 0) parse_fail(name, line, "multi-index components must be >= 0");
    }
    return MultiIndex(std::move(e));
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_')
            out += c;
        else
            out += '_';
    }
    return out;
}

std::string kind_name(ExperimentSpec::Kind k) {
    using Kind = ExperimentSpec::Kind;
    switch (k) {
        case Kind::Moments:
            return "moments";
        case Kind::VerifyPL:
            return "verify-pl";
        case Kind::VerifyLemma:
            return "verify-lemma";
        case Kind::VerifyScalar:
            return "verify-scalar";
        case Kind::MBetaScan:
            return "mbeta-scan";
        case Kind::Project:
            return "project";
        case Kind::KernelEval:
            return "kernel-eval";
        case Kind::SobolevBound:
            return "sobolev-bound";
    }
    return "?";
}

bool needs_table(ExperimentSpec::Kind k) {
    using Kind = ExperimentSpec::Kind;
    return k == Kind::Moments || k == Kind::VerifyLemma || k == Kind::MBetaScan ||
           k == Kind::Project || k == Kind::KernelEval || k == Kind::SobolevBound;
}

struct TableHeader {
    std::string domain;
    std::string weight;
    int max_degree = -1;
    double tolerance = 0.0;
};

std::optional<TableHeader> peek_table_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line.rfind("bergman-moment-table ", 0) != 0)
        return std::nullopt;
    TableHeader h;
    auto strip = [](const std::string& l, const char* key) -> std::optional<std::string> {
        const std::string k = std::string(key) + " ";
        if (l.rfind(k, 0) != 0) return std::nullopt;
        return l.substr(k.size());
    };
    if (!std::getline(in, line)) return std::nullopt;
    if (auto v = strip(line, "domain")) h.domain = *v; else return std::nullopt;
    if (!std::getline(in, line)) return std::nullopt;
    if (auto v = strip(line, "weight")) h.weight = *v; else return std::nullopt;
    if (!std::getline(in, line)) return std::nullopt;
    if (auto v = strip(line, "max_degree")) h.max_degree = std::stoi(*v); else return std::nullopt;
    if (!std::getline(in, line)) return std::nullopt;
    if (auto v = strip(line, "tolerance")) h.tolerance = std::strtod(v->c_str(), nullptr);
    else return std::nullopt;
    return h;
}

std::string timestamp_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::tm tm_buf{};
    gmtime_r(&t, &tm_buf);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_buf);
    return buf;
}

struct ExperimentOutcome {
    std::string csv_file;
    bool pass = true;
    bool is_verification = false;
};

void write_file_checked(const fs::path& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Experiment executors
// ---------------------------------------------------------------------------

ExperimentOutcome exec_moments(const MomentTable& table, const fs::path& csv) {
    std::string body = "# moments: " + table.domain().descriptor() + "; " +
                       table.weight().descriptor() + "\n";
    const int n = table.dim();
    for (int i = 0; i < n; ++i) body += "gamma_" + std::to_string(i + 1) + ",";
    body += "log_d2,d2\n";
    const int side = table.max_degree() + 1;
    std::vector<int> gamma(static_cast<size_t>(n));
    for (long flat = 0; flat < table.entry_count(); ++flat) {
        long rem = flat;
        for (int i = n - 1; i >= 0; --i) {
            gamma[static_cast<size_t>(i)] = static_cast<int>(rem % side);
            rem /= side;
        }
        const double lv = table.raw_log_entries()[static_cast<size_t>(flat)];
        for (int i = 0; i < n; ++i) body += std::to_string(gamma[static_cast<size_t>(i)]) + ",";
        body += format_double(lv) + "," + format_double(std::exp(lv)) + "\n";
    }
    write_file_checked(csv, body);
    return {csv.filename().string(), true, false};
}

ExperimentOutcome exec_verify_pl(const Config& config, const ExperimentSpec& spec,
                                 const fs::path& csv) {
    const int grid = spec.grid;
    std::string body = InequalityReport::csv_header() + "\n";
    bool all_pass = true;

    auto run_triple = [&](const SampledFunction& f, const SampledFunction& g,
                          const SampledFunction& h, const PLBox& box) {
        const auto report = check_prekopa_leindler(f, g, h, box, 0.5, grid);
        all_pass = all_pass && report.pass;
        body += report.csv_row() + "\n";
    };

    SampledFunction indicator{"indicator",
                              [](std::span<const double>) { return 1.0; }};
    run_triple(indicator, indicator, indicator, PLBox{{0.0}, {1.0}});

    SampledFunction gauss{"gauss", [](std::span<const double> x) {
                              return std::exp(-x[0] * x[0]);
                          }};
    run_triple(gauss, gauss, gauss, PLBox{{-5.0}, {5.0}});

    // Moment-ratio construction on the radial image (one-dimensional domains):
    // f = r^zeta lambda, g = r^(zeta+2 eta) lambda, h = 2^eta r^(zeta+eta) lambda.
    if (config.domain && config.domain->dim() == 1 && config.domain->has_evaluator() &&
        config.weight) {
        const RadialDomain& domain = *config.domain;
        const WeightSpec& weight = *config.weight;
        auto lambda = [&domain, &weight](double r) {
            const double rho = domain.rho(std::span<const double>(&r, 1));
            if (rho >= 0.0) return 0.0;
            return std::exp(weight.log_f(-rho));
        };
        const double edge = domain.radial_box()[0];
        for (int zeta = 0; zeta <= 5; ++zeta) {
            for (int eta = 0; eta <= 4; ++eta) {
                SampledFunction f{"r^" + std::to_string(zeta) + "*lambda",
                                  [lambda, zeta](std::span<const double> x) {
                                      return std::pow(x[0], zeta) * lambda(x[0]);
                                  }};
                SampledFunction g{"r^" + std::to_string(zeta + 2 * eta) + "*lambda",
                                  [lambda, zeta, eta](std::span<const double> x) {
                                      return std::pow(x[0], zeta + 2 * eta) * lambda(x[0]);
                                  }};
                const double scale = std::pow(2.0, eta);
                SampledFunction h{"2^" + std::to_string(eta) + "*r^" +
                                      std::to_string(zeta + eta) + "*lambda",
                                  [lambda, zeta, eta, scale](std::span<const double> x) {
                                      return scale * std::pow(x[0], zeta + eta) * lambda(x[0]);
                                  }};
                run_triple(f, g, h, PLBox{{0.0}, {edge}});
            }
        }
    }

    write_file_checked(csv, body);
    return {csv.filename().string(), all_pass, true};
}

ExperimentOutcome exec_verify_lemma(const MomentTable& table, const ExperimentSpec& spec,
                                    const fs::path& csv) {
    const int scan_degree = table.max_degree() - 2 * spec.beta.max_component();
    const auto report = scan_lemma_coeff(table, spec.beta, scan_degree);
    write_file_checked(csv, InequalityReport::csv_header() + "\n" + report.csv_row() + "\n");
    return {csv.filename().string(), report.pass, true};
}

ExperimentOutcome exec_verify_scalar(const Config& config, const ExperimentSpec& spec,
                                     const fs::path& csv) {
    Rng rng(config.seed);
    double worst_gap = std::numeric_limits<double>::infinity();
    std::string witness;
    long violations = 0;
    for (long s = 0; s < spec.samples; ++s) {
        const double u = 10.0 * (1.0 - rng.uniform());  // (0, 10]
        const double v = 10.0 * (1.0 - rng.uniform());
        const int a = static_cast<int>(rng.uniform_int(51));
        const int b = static_cast<int>(rng.uniform_int(6));
        const double gap = scalar_midpoint_log_gap(u, v, a, b);
        if (!check_scalar_midpoint(u, v, a, b)) ++violations;
        if (gap < worst_gap) {
            worst_gap = gap;
            witness = "u=" + format_double(u) + " v=" + format_double(v) +
                      " a=" + std::to_string(a) + " b=" + std::to_string(b);
        }
    }
    // Equality family u = v, where the two sides differ by exactly 2^b.
    double worst_equality_dev = 0.0;
    for (long s = 0; s < 1000; ++s) {
        const double u = 10.0 * (1.0 - rng.uniform());
        const int a = static_cast<int>(rng.uniform_int(51));
        const int b = static_cast<int>(rng.uniform_int(6));
        const double dev = std::abs(scalar_midpoint_log_gap(u, u, a, b) - b * std::numbers::ln2);
        worst_equality_dev = std::max(worst_equality_dev, dev);
    }
    const bool pass = violations == 0 && worst_equality_dev <= 1e-12;

    InequalityReport report;
    report.name = "scalar-midpoint";
    report.parameters = "samples=" + std::to_string(spec.samples) +
                        ";seed=" + std::to_string(config.seed) +
                        ";equality_dev=" + format_double(worst_equality_dev);
    report.worst_ratio = worst_gap;
    report.min_ratio = worst_gap;
    report.worst_witness = witness;
    report.samples = spec.samples;
    report.pass = pass;
    write_file_checked(csv, InequalityReport::csv_header() + "\n" + report.csv_row() + "\n");
    return {csv.filename().string(), pass, true};
}

ExperimentOutcome exec_mbeta_scan(const MomentTable& table, const ExperimentSpec& spec,
                                  const fs::path& csv) {
    const int scan_degree = table.max_degree() - 2 * spec.beta.max_component();
    const double bound = std::pow(4.0, spec.beta.total());
    std::string body = "# mbeta-scan: beta=(" + spec.beta.to_string() + ") table=" +
                       table.domain().descriptor() + "; " + table.weight().descriptor() + "\n";
    const int n = table.dim();
    for (int i = 0; i < n; ++i) body += "alpha_" + std::to_string(i + 1) + ",";
    body += "binomial_factor,coeff_ratio,norm_ratio\n";
    bool pass = true;
    double worst = 0.0;
    for (const auto& alpha : indices_in_box(n, scan_degree)) {
        const double bf = binomial_factor(alpha, spec.beta);
        const double cr = lemma_coeff_ratio(table, alpha, spec.beta);
        const double nr = m_beta_norm_ratio(table, alpha, spec.beta);
        pass = pass && nr <= bf * bound + 1e-6;
        worst = std::max(worst, nr);
        for (int i = 0; i < n; ++i) body += std::to_string(alpha[i]) + ",";
        body += format_double(bf) + "," + format_double(cr) + "," + format_double(nr) + "\n";
    }
    body += "# worst_norm_ratio=" + format_double(worst) +
            " bound=binomial_factor*" + format_double(bound) +
            " pass=" + (pass ? "yes" : "no") + "\n";
    write_file_checked(csv, body);
    return {csv.filename().string(), pass, true};
}

ExperimentOutcome exec_project(const MomentTable& table, const MonomialPolynomial& poly,
                               const fs::path& csv) {
    const auto projected = project(table, poly);
    const int n = table.dim();
    std::string body;
    for (int i = 0; i < n; ++i) body += "p_" + std::to_string(i + 1) + ",";
    for (int i = 0; i < n; ++i) body += "q_" + std::to_string(i + 1) + ",";
    body += "re,im\n";
    for (const auto& [term, c] : projected.terms()) {
        for (int i = 0; i < n; ++i) body += std::to_string(term.p[i]) + ",";
        for (int i = 0; i < n; ++i) body += std::to_string(term.q[i]) + ",";
        body += format_double(c.real()) + "," + format_double(c.imag()) + "\n";
    }
    write_file_checked(csv, body);
    return {csv.filename().string(), true, false};
}

ExperimentOutcome exec_kernel_eval(const MomentTable& table, const ExperimentSpec& spec,
                                   const fs::path& csv) {
    const TruncatedKernel kernel(table, spec.kernel_degree);
    const auto value = kernel.eval(spec.z, spec.w);
    const int n = table.dim();
    std::string body = "j,";
    for (int i = 0; i < n; ++i)
        body += "z" + std::to_string(i + 1) + "_re,z" + std::to_string(i + 1) + "_im,";
    for (int i = 0; i < n; ++i)
        body += "w" + std::to_string(i + 1) + "_re,w" + std::to_string(i + 1) + "_im,";
    body += "re,im\n" + std::to_string(spec.kernel_degree) + ",";
    for (const auto& zi : spec.z)
        body += format_double(zi.real()) + "," + format_double(zi.imag()) + ",";
    for (const auto& wi : spec.w)
        body += format_double(wi.real()) + "," + format_double(wi.imag()) + ",";
    body += format_double(value.real()) + "," + format_double(value.imag()) + "\n";
    write_file_checked(csv, body);
    return {csv.filename().string(), true, false};
}

ExperimentOutcome exec_sobolev(const MomentTable& table, const Config& config,
                               const ExperimentSpec& spec, const fs::path& csv) {
    const int input_degree =
        spec.input_degree >= 0 ? spec.input_degree : table.max_degree() / 2;
    const InputFamily family = spec.family == "random-mixed" ? InputFamily::RandomMixed
                                                             : InputFamily::PureMonomials;
    const auto report = boundedness_experiment(table, spec.k, spec.beta, input_degree, family,
                                               config.seed, spec.count);
    std::string body = BoundednessReport::csv_header() + "\n" + report.csv_rows() +
                       report.summary_line() + "\n";
    write_file_checked(csv, body);
    return {csv.filename().string(), report.trend == Trend::Plateau, true};
}

}  // namespace

Config parse_config_text(const std::string& text, const std::string& name) {
    Config config;
    config.echo = text;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_domain = false, have_weight = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        const std::string& key = tok[0];

        if (key == "domain") {
            if (have_domain) parse_fail(name, line_no, "duplicate 'domain'");
            try {
                config.domain = RadialDomain::from_descriptor(
                    std::span<const std::string>(tok.data() + 1, tok.size() - 1));
            } catch (const std::exception& e) {
                parse_fail(name, line_no, e.what());
            }
            have_domain = true;
        } else if (key == "weight") {
            if (have_weight) parse_fail(name, line_no, "duplicate 'weight'");
            try {
                config.weight = WeightSpec::from_descriptor(
                    std::span<const std::string>(tok.data() + 1, tok.size() - 1));
            } catch (const std::exception& e) {
                parse_fail(name, line_no, e.what());
            }
            have_weight = true;
        } else if (key == "table") {
            if (tok.size() != 2) parse_fail(name, line_no, "expected 'table <path>'");
            config.table_path = tok[1];
        } else if (key == "max_degree") {
            if (tok.size() != 2) parse_fail(name, line_no, "expected 'max_degree <int>'");
            config.max_degree = to_int(tok[1], name, line_no);
            if (config.max_degree < 0) parse_fail(name, line_no, "max_degree must be >= 0");
        } else if (key == "tolerance") {
            if (tok.size() != 2) parse_fail(name, line_no, "expected 'tolerance <real>'");
            config.tolerance = to_double(tok[1], name, line_no);
            if (!(config.tolerance > 0.0)) parse_fail(name, line_no, "tolerance must be > 0");
        } else if (key == "seed") {
            if (tok.size() != 2) parse_fail(name, line_no, "expected 'seed <int>'");
            try {
                config.seed = std::stoull(tok[1]);
            } catch (const std::exception&) {
                parse_fail(name, line_no, "bad seed '" + tok[1] + "'");
            }
        } else if (key == "output") {
            if (tok.size() != 2) parse_fail(name, line_no, "expected 'output <dir>'");
            config.output_dir = tok[1];
        } else if (key == "experiment") {
            if (tok.size() < 2) parse_fail(name, line_no, "expected 'experiment <kind> ...'");
            ExperimentSpec spec;
            spec.raw = line;
            const std::string& kind = tok[1];
            using Kind = ExperimentSpec::Kind;
            if (kind == "moments") {
                if (tok.size() != 2) parse_fail(name, line_no, "'moments' takes no arguments");
                spec.kind = Kind::Moments;
            } else if (kind == "verify-pl") {
                spec.kind = Kind::VerifyPL;
                if (tok.size() == 3) spec.grid = to_int(tok[2], name, line_no);
                else if (tok.size() != 2)
                    parse_fail(name, line_no, "expected 'verify-pl [grid]'");
                if (spec.grid < 2) parse_fail(name, line_no, "grid must be >= 2");
            } else if (kind == "verify-lemma") {
                spec.kind = Kind::VerifyLemma;
                spec.beta = parse_beta(tok, 2, tok.size(), name, line_no);
            } else if (kind == "verify-scalar") {
                spec.kind = Kind::VerifyScalar;
                if (tok.size() == 3) spec.samples = to_int(tok[2], name, line_no);
                else if (tok.size() != 2)
                    parse_fail(name, line_no, "expected 'verify-scalar [samples]'");
                if (spec.samples < 1) parse_fail(name, line_no, "samples must be >= 1");
            } else if (kind == "mbeta-scan") {
                spec.kind = Kind::MBetaScan;
                spec.beta = parse_beta(tok, 2, tok.size(), name, line_no);
            } else if (kind == "project") {
                spec.kind = Kind::Project;
                if (tok.size() != 3) parse_fail(name, line_no, "expected 'project <polyfile>'");
                spec.poly_path = tok[2];
            } else if (kind == "kernel-eval") {
                spec.kind = Kind::KernelEval;
                if (tok.size() < 3) parse_fail(name, line_no, "expected 'kernel-eval <j> <z...> <w...>'");
                spec.kernel_degree = to_int(tok[2], name, line_no);
                const size_t remaining = tok.size() - 3;
                if (remaining == 0 || remaining % 4 != 0)
                    parse_fail(name, line_no,
                               "expected 4n point coordinates (re/im per z and w coordinate)");
                const size_t n = remaining / 4;
                for (size_t i = 0; i < n; ++i)
                    spec.z.emplace_back(to_double(tok[3 + 2 * i], name, line_no),
                                        to_double(tok[3 + 2 * i + 1], name, line_no));
                for (size_t i = 0; i < n; ++i)
                    spec.w.emplace_back(to_double(tok[3 + 2 * n + 2 * i], name, line_no),
                                        to_double(tok[3 + 2 * n + 2 * i + 1], name, line_no));
            } else if (kind == "sobolev-bound") {
                spec.kind = Kind::SobolevBound;
                if (tok.size() < 4)
                    parse_fail(name, line_no,
                               "expected 'sobolev-bound <k> <beta...> <family> [input_degree] [count]'");
                spec.k = to_int(tok[2], name, line_no);
                // beta components run until the family token
                size_t fam_pos = 3;
                while (fam_pos < tok.size() && (std::isdigit(static_cast<unsigned char>(tok[fam_pos][0]))))
                    ++fam_pos;
                if (fam_pos == 3 || fam_pos == tok.size())
                    parse_fail(name, line_no, "expected beta components then a family name");
                spec.beta = parse_beta(tok, 3, fam_pos, name, line_no);
                spec.family = tok[fam_pos];
                if (spec.family != "pure-monomials" && spec.family != "random-mixed")
                    parse_fail(name, line_no, "family must be pure-monomials or random-mixed");
                size_t next = fam_pos + 1;
                if (next < tok.size()) spec.input_degree = to_int(tok[next++], name, line_no);
                if (next < tok.size()) spec.count = to_int(tok[next++], name, line_no);
                if (next != tok.size()) parse_fail(name, line_no, "trailing tokens");
            } else {
                parse_fail(name, line_no, "unknown experiment kind '" + kind + "'");
            }
            config.experiments.push_back(std::move(spec));
        } else {
            parse_fail(name, line_no, "unknown directive '" + key + "'");
        }
    }
    return config;
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

MonomialPolynomial load_polynomial(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open polynomial file '" + path + "'");
    std::string line;
    int line_no = 0;
    int dim = -1;
    std::optional<MonomialPolynomial> poly;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (dim < 0) {
            if (tok.size() != 2 || tok[0] != "dimension")
                throw FormatError(path + ":" + std::to_string(line_no) +
                                  ": expected 'dimension <n>' first");
            dim = std::stoi(tok[1]);
            if (dim < 1)
                throw FormatError(path + ":" + std::to_string(line_no) + ": dimension must be >= 1");
            poly.emplace(dim);
            continue;
        }
        if (static_cast<int>(tok.size()) != 2 * dim + 2)
            throw FormatError(path + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(2 * dim + 2) + " fields (p q re im)");
        std::vector<int> p, q;
        for (int i = 0; i < dim; ++i) p.push_back(std::stoi(tok[static_cast<size_t>(i)]));
        for (int i = 0; i < dim; ++i) q.push_back(std::stoi(tok[static_cast<size_t>(dim + i)]));
        const double re = std::strtod(tok[static_cast<size_t>(2 * dim)].c_str(), nullptr);
        const double im = std::strtod(tok[static_cast<size_t>(2 * dim + 1)].c_str(), nullptr);
        poly->add_term(MultiIndex(std::move(p)), MultiIndex(std::move(q)), {re, im});
    }
    if (!poly) throw FormatError(path + ": missing 'dimension' line");
    return *poly;
}

void save_polynomial(const MonomialPolynomial& poly, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "dimension " << poly.dim() << "\n";
    for (const auto& [term, c] : poly.terms()) {
        out << term.p.to_string() << " " << term.q.to_string() << " " << format_double(c.real())
            << " " << format_double(c.imag()) << "\n";
    }
}

int run(const Config& config, std::ostream& log) {
    const auto t_start = std::chrono::steady_clock::now();
    const std::string started = timestamp_now();

    // ---- Stage 0: resolve the moment table source ---------------------------
    std::optional<MomentTable> table;
    std::string table_note = "none";
    const bool any_table = [&] {
        for (const auto& e : config.experiments)
            if (needs_table(e.kind)) return true;
        return false;
    }();

    fs::create_directories(config.output_dir);

    RadialDomain domain = config.domain.value_or(RadialDomain::disc());
    WeightSpec weight = config.weight.value_or(WeightSpec::constant_one());
    int max_degree = config.max_degree;

    if (config.table_path) {
        table = load_table(*config.table_path);
        if (config.domain && config.domain->descriptor() != table->domain().descriptor())
            throw FormatError("configured domain does not match the table at '" +
                              *config.table_path + "'");
        if (config.weight && !(config.weight->descriptor() == table->weight().descriptor()))
            throw FormatError("configured weight does not match the table at '" +
                              *config.table_path + "'");
        domain = table->domain();
        weight = table->weight();
        max_degree = table->max_degree();
        table_note = *config.table_path + " (explicit)";
    } else if (any_table) {
        if (!config.domain || !config.weight)
            throw FormatError("experiments need a table: specify 'domain' and 'weight' (or 'table')");
    }

    const int n = domain.dim();

    // ---- Stage 1: validate every experiment before any output ---------------
    std::map<size_t, MonomialPolynomial> loaded_polys;
    for (size_t i = 0; i < config.experiments.size(); ++i) {
        const auto& spec = config.experiments[i];
        using Kind = ExperimentSpec::Kind;
        switch (spec.kind) {
            case Kind::VerifyLemma:
            case Kind::MBetaScan: {
                if (spec.beta.dim() != n)
                    throw FormatError("experiment '" + spec.raw + "': beta needs " +
                                      std::to_string(n) + " components");
                if (max_degree - 2 * spec.beta.max_component() < 0)
                    throw TableRangeError("experiment '" + spec.raw +
                                          "': beta exceeds the table degree " +
                                          std::to_string(max_degree));
                break;
            }
            case Kind::KernelEval: {
                if (static_cast<int>(spec.z.size()) != n || static_cast<int>(spec.w.size()) != n)
                    throw FormatError("experiment '" + spec.raw + "': points need " +
                                      std::to_string(n) + " complex coordinates");
                if (spec.kernel_degree > max_degree || spec.kernel_degree < 0)
                    throw TableRangeError("experiment '" + spec.raw + "': kernel degree " +
                                          std::to_string(spec.kernel_degree) +
                                          " exceeds max_degree " + std::to_string(max_degree));
                break;
            }
            case Kind::Project: {
                MonomialPolynomial poly = load_polynomial(spec.poly_path);
                if (poly.dim() != n)
                    throw FormatError("experiment '" + spec.raw + "': polynomial dimension " +
                                      std::to_string(poly.dim()) + " does not match domain");
                const MultiIndex need = poly.needed_table_degree();
                for (int c = 0; c < n; ++c) {
                    if (need[c] > max_degree)
                        throw TableRangeError("experiment '" + spec.raw +
                                              "': polynomial needs table degree " +
                                              std::to_string(need[c]) + " > max_degree " +
                                              std::to_string(max_degree));
                }
                loaded_polys.emplace(i, std::move(poly));
                break;
            }
            case Kind::SobolevBound: {
                if (spec.beta.dim() != n)
                    throw FormatError("experiment '" + spec.raw + "': beta needs " +
                                      std::to_string(n) + " components");
                if (spec.beta.total() > spec.k)
                    throw FormatError("experiment '" + spec.raw + "': need |beta| <= k");
                const int input_degree =
                    spec.input_degree >= 0 ? spec.input_degree : max_degree / 2;
                if (2 * input_degree > max_degree)
                    throw TableRangeError("experiment '" + spec.raw + "': input degree " +
                                          std::to_string(input_degree) +
                                          " needs table degree " +
                                          std::to_string(2 * input_degree) + " > max_degree " +
                                          std::to_string(max_degree));
                break;
            }
            case Kind::Moments:
            case Kind::VerifyPL:
            case Kind::VerifyScalar:
                break;
        }
    }

    // ---- Stage 2: build or load the moment table ----------------------------
    if (any_table && !table) {
        const std::string cache_name =
            "table_" + sanitize(domain.descriptor() + "_" + weight.descriptor()) + "_d" +
            std::to_string(max_degree) + "_t" + sanitize(format_double(config.tolerance)) +
            ".mtab";
        const fs::path cache_path = fs::path(config.output_dir) / cache_name;
        bool loaded = false;
        if (fs::exists(cache_path)) {
            if (auto header = peek_table_header(cache_path.string())) {
                if (header->domain == domain.descriptor() &&
                    header->weight == weight.descriptor() && header->max_degree == max_degree &&
                    header->tolerance == config.tolerance) {
                    table = load_table(cache_path.string());
                    table_note = cache_name + " (cache hit)";
                    loaded = true;
                    log << "loaded cached table " << cache_path.string() << "\n";
                }
            }
        }
        if (!loaded) {
            log << "building moment table (" << domain.descriptor() << "; " << weight.descriptor()
                << "; degree " << max_degree << ")...\n";
            table = MomentTable::build(domain, weight, max_degree, config.tolerance);
            save_table(*table, cache_path.string());
            table_note = cache_name + " (built)";
        }
    }

    // ---- Stage 3: execute ----------------------------------------------------
    std::vector<std::pair<std::string, ExperimentOutcome>> outcomes;
    bool all_pass = true;
    for (size_t i = 0; i < config.experiments.size(); ++i) {
        const auto& spec = config.experiments[i];
        char prefix[16];
        std::snprintf(prefix, sizeof(prefix), "%02zu_", i + 1);
        const fs::path csv =
            fs::path(config.output_dir) / (prefix + kind_name(spec.kind) + ".csv");
        ExperimentOutcome outcome;
        using Kind = ExperimentSpec::Kind;
        switch (spec.kind) {
            case Kind::Moments:
                outcome = exec_moments(*table, csv);
                break;
            case Kind::VerifyPL:
                outcome = exec_verify_pl(config, spec, csv);
                break;
            case Kind::VerifyLemma:
                outcome = exec_verify_lemma(*table, spec, csv);
                break;
            case Kind::VerifyScalar:
                outcome = exec_verify_scalar(config, spec, csv);
                break;
            case Kind::MBetaScan:
                outcome = exec_mbeta_scan(*table, spec, csv);
                break;
            case Kind::Project:
                outcome = exec_project(*table, loaded_polys.at(i), csv);
                break;
            case Kind::KernelEval:
                outcome = exec_kernel_eval(*table, spec, csv);
                break;
            case Kind::SobolevBound:
                outcome = exec_sobolev(*table, config, spec, csv);
                break;
        }
        all_pass = all_pass && outcome.pass;
        log << kind_name(spec.kind) << " -> " << outcome.csv_file
            << (outcome.is_verification ? (outcome.pass ? " [pass]" : " [FAIL]") : "") << "\n";
        outcomes.emplace_back(kind_name(spec.kind), outcome);
    }

    // ---- Stage 4: manifest ---------------------------------------------------
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::string manifest = "bergman run manifest\n";
    manifest += "version " + std::string(kVersion) + "\n";
    manifest += "started " + started + "\n";
    manifest += "--- config ---\n" + config.echo;
    if (!config.echo.empty() && config.echo.back() != '\n') manifest += "\n";
    manifest += "--- end config ---\n";
    manifest += "table " + table_note + "\n";
    for (size_t i = 0; i < outcomes.size(); ++i) {
        manifest += "experiment " + std::to_string(i + 1) + " " + outcomes[i].first + " -> " +
                    outcomes[i].second.csv_file;
        if (outcomes[i].second.is_verification)
            manifest += outcomes[i].second.pass ? " pass" : " FAIL";
        manifest += "\n";
    }
    manifest += std::string("verifications ") + (all_pass ? "passed" : "failed") + "\n";
    manifest += "wall_time_seconds " + format_double(wall) + "\n";
    write_file_checked(fs::path(config.output_dir) / "manifest.txt", manifest);

    return all_pass ? kOk : kVerificationFailed;
}

int run_config_file(const std::string& path, std::ostream& log) {
    Config config;
    try {
        config = parse_config_file(path);
    } catch (const std::exception& e) {
        log << "config error: " << e.what() << "\n";
        return kParseError;
    }
    try {
        return run(config, log);
    } catch (const TableRangeError& e) {
        log << "range error: " << e.what() << "\n";
        return kRangeError;
    } catch (const QuadratureError& e) {
        log << "quadrature error: " << e.what() << "\n";
        return kQuadratureFailure;
    } catch (const FormatError& e) {
        log << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kIoError;
    }
}

}  // namespace bergman::cli
