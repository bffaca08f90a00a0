#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/multi_index.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/weight.hpp"

namespace bergman::cli {

/// Process exit codes, one per failure class (documented in --help).
enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kParseError = 2,
    kRangeError = 3,
    kQuadratureFailure = 4,
    kIoError = 5,
};

struct ExperimentSpec {
    enum class Kind {
        Moments,
        VerifyPL,
        VerifyLemma,
        VerifyScalar,
        MBetaScan,
        Project,
        KernelEval,
        SobolevBound,
    };
    Kind kind;
    std::string raw;  // config line, echoed in the manifest

    MultiIndex beta;                          // verify-lemma, mbeta-scan, sobolev-bound
    int k = 0;                                // sobolev-bound
    int input_degree = -1;                    // sobolev-bound; -1 = max_degree / 2
    std::string family = "pure-monomials";    // sobolev-bound
    int count = 16;                           // sobolev-bound random-mixed
    long samples = 1000000;                   // verify-scalar
    int grid = 2048;                          // verify-pl
    std::string poly_path;                    // project
    int kernel_degree = 0;                    // kernel-eval
    std::vector<std::complex<double>> z, w;   // kernel-eval
};

struct Config {
    std::optional<RadialDomain> domain;
    std::optional<WeightSpec> weight;
    std::optional<std::string> table_path;  // load instead of building
    int max_degree = 20;
    double tolerance = 1e-10;
    uint64_t seed = 0;
    std::string output_dir = "out";
    std::vector<ExperimentSpec> experiments;
    std::string echo;  // original config text for the manifest
};

/// Parses the flat tagged-record configuration format (see README).
/// Throws FormatError with <name>:<line> positions.
Config parse_config_text(const std::string& text, const std::string& name);
Config parse_config_file(const std::string& path);

/// Polynomial record files: "dimension <n>" then one "p... q... re im" line
/// per term.
MonomialPolynomial load_polynomial(const std::string& path);
void save_polynomial(const MonomialPolynomial& poly, const std::string& path);

/// Executes the experiments in order, writing one CSV per experiment plus a
/// run manifest into the output directory. Returns kOk iff everything ran
/// and all verifications passed. `log` receives progress lines.
int run(const Config& config, std::ostream& log);

/// Convenience wrapper: parse + run, mapping thrown errors to exit codes.
int run_config_file(const std::string& path, std::ostream& log);

}  // namespace bergman::cli
