// qflag command-line tool: fiber checks, Einstein scans, conventions ledger.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qflag/einstein.hpp"
#include "qflag/fibercalc.hpp"
#include "qflag/podles.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitUnsupported = 2;

struct RunConfig {
    std::string flag;
    double qmin = 0.5;
    double qmax = 2.0;
    int samples = 97;
    std::string shatNorm;  // Scalar expression, empty = default table
    std::string format = "json";
    std::string out;       // empty = stdout
};

/// Applies key=value lines from a config file; flags given on the command
/// line take precedence, so the file is read first.
void applyConfigFile(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed config line: " + line);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        if (key == "qmin") cfg.qmin = std::stod(val);
        else if (key == "qmax") cfg.qmax = std::stod(val);
        else if (key == "samples") cfg.samples = std::stoi(val);
        else if (key == "shat-norm") cfg.shatNorm = val;
        else if (key == "format") cfg.format = val;
        else if (key == "out") cfg.out = val;
        else if (key == "flag") cfg.flag = val;
        else throw std::runtime_error("unknown config key: " + key);
    }
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw std::runtime_error("cannot open output file: " + cfg.out);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    }
}

/// Parses and validates the flag; exits 2 on unsupported input.
qflag::FlagSpec requireFlag(const RunConfig& cfg) {
    qflag::FlagSpec flag = qflag::parseFlagSpec(cfg.flag);
    if (!qflag::isIrreducibleFlag(flag.cartan, flag.node)) {
        std::cerr << cfg.flag << ": not an irreducible flag\n";
        std::exit(kExitUnsupported);
    }
    return flag;
}

int cmdFiberCheck(const RunConfig& cfg) {
    qflag::FlagSpec flag = requireFlag(cfg);
    std::optional<qflag::Scalar> norm;
    if (!cfg.shatNorm.empty()) norm = qflag::parseScalar(cfg.shatNorm);

    std::optional<qflag::FiberData> fdOpt;
    try {
        fdOpt = qflag::cotangentFibers(flag, norm);
    } catch (const qflag::ScalarError& e) {
        std::cerr << cfg.flag << ": " << e.what() << "\n";
        return kExitUnsupported;
    }
    const qflag::FiberData& fd = *fdOpt;

    auto fail = [&](const std::string& check) {
        std::cerr << cfg.flag << ": fiber invariant failed: " << check << "\n";
        return kExitInvariantFailure;
    };
    const qflag::Scalar half(qflag::Rational(1, 2));

    // wedge o lift = id for both canonical lifts and their midpoint.
    qflag::Mat id = qflag::identityMat(fd.dimV11());
    if (!qflag::isZeroMat(fd.wedge * fd.liftPm - id)) return fail("wedge o lift_pm = id");
    if (!qflag::isZeroMat(fd.wedge * fd.liftMp - id)) return fail("wedge o lift_mp = id");
    qflag::Mat mid = qflag::combineLifts(fd, half, half);
    if (!qflag::isZeroMat(fd.wedge * mid - id)) return fail("wedge o lift_mid = id");

    // Equivariance: all three lifts and the wedge are block matrices built
    // from I and Shat, so equivariance reduces to that of Shat.
    if (!fd.shat.commutesWithAction()) return fail("Shat equivariance");

    // Classical limits: the normalized braiding degenerates to the flip.
    qflag::Mat flip = qflag::flipMat(fd.dimV10(), fd.dimV01());
    try {
        if (!qflag::isZeroMat(qflag::classicalLimitMat(fd.shat.matrix) - flip))
            return fail("classical limit of Shat = flip");
        if (!qflag::isZeroMat(qflag::classicalLimitMat(fd.liftPm).topRows(fd.dimV11()) - id))
            return fail("classical limit of lift_pm");
    } catch (const qflag::ScalarError&) {
        return fail("classical limit exists");
    }

    // dim of invariants of V^1 (x) V^1 with V^1 = V10 + V01: sum over the
    // four tensor blocks of the direct-sum square.
    Eigen::Index invDim = 0;
    for (const auto* m : {&fd.v10, &fd.v01})
        for (const auto* n : {&fd.v10, &fd.v01})
            invDim += qflag::invariants(qflag::tensor(*m, *n)).cols();
    if (invDim != 2) return fail("dim invariants(V1 (x) V1) = 2");

    emit(cfg, qflag::fiberReportJson(fd));
    return kExitOk;
}

int cmdEinstein(const RunConfig& cfg) {
    qflag::FlagSpec flag = requireFlag(cfg);
    if (flag.name() != "A1:1") {
        std::cerr << cfg.flag
                  << ": no geometry backend; the full differential-geometry "
                     "pipeline is implemented for A1:1 only\n";
        return kExitUnsupported;
    }
    if (cfg.qmin <= 0 || cfg.qmin > cfg.qmax || cfg.samples < 1) {
        std::cerr << "invalid q-grid: require 0 < qmin <= qmax and samples >= 1\n";
        return kExitUnsupported;
    }

    qflag::podles::Connection conn = qflag::podles::solveConnection();
    qflag::podles::RicciData rd = qflag::podles::ricciCoefficients(conn);
    qflag::RicciReport rep = qflag::einsteinScan(rd.a, rd.b, cfg.qmin, cfg.qmax, cfg.samples);

    std::string text;
    if (cfg.format == "csv") {
        text = qflag::ricciReportToCsv(rep);
    } else if (cfg.format == "json") {
        text = qflag::ricciReportToJson(rep);
    } else if (cfg.format == "pretty") {
        std::ostringstream os;
        os << "Ricci coefficients for " << cfg.flag << "\n"
           << "  a      = " << rep.a.toString() << "\n"
           << "  b      = " << rep.b.toString() << "\n"
           << "  c1     = " << rep.c1.toString() << "\n"
           << "  c2     = " << rep.c2.toString() << "\n"
           << "  lambda = " << rep.lambda.toString() << "\n"
           << "  exact roots of num(a+b) in scan interval: "
           << rep.exactRootsInInterval << "\n"
           << "  certified root-free q-neighborhood of 1: ["
           << rep.neighborhoodLo << ", " << rep.neighborhoodHi << "]\n"
           << "  samples: " << rep.qSamples.size()
           << (rep.einsteinOk ? " (all Einstein)" : " (FAILURES)") << "\n";
        text = os.str();
    } else {
        std::cerr << "unknown format: " << cfg.format << "\n";
        return kExitUnsupported;
    }
    emit(cfg, text);
    return rep.einsteinOk && rep.exactRootsInInterval == 0 ? kExitOk : kExitInvariantFailure;
}

int cmdConventions(const RunConfig& cfg) {
    json j;
    j["coproduct"] = {
        {"E", "E (x) K + 1 (x) E"},
        {"K", "K (x) K"},
        {"F", "F (x) 1 + K^{-1} (x) F"},
    };
    j["module_algebra_action"] = {
        {"E", "E(xy) = (Kx)(Ey) + (Ex)y"},
        {"F", "F(xy) = x(Fy) + (Fx)(K^{-1}y)"},
        {"note", "opposite-coproduct rule for the left action on function algebras"},
    };
    j["sphere_relations"] = {
        "ab = q ba", "ac = q ca", "bc = cb", "bd = q db",
        "cd = q dc", "ad - da = (q - q^{-1}) bc", "ad - q bc = 1",
    };
    j["frame_calculus"] = {
        {"d", "d x = (del x) w+ + (dbar x) w-"},
        {"del", "del x = F > x"},
        {"dbar", "dbar x = q^{-|x|} E > x"},
        {"twist", "w_eps . x = q^{-|x|} x . w_eps,  vol . x = q^{-2|x|} x . vol"},
        {"wedge", "w+ ^ w- = vol,  w- ^ w+ = -q^{-2} vol"},
        {"frame_scalar", "q^2"},
    };
    j["shat_normalization"] = {
        {"A1:1", qflag::defaultShatNormalization(qflag::parseFlagSpec("A1:1")).toString()},
        {"default", "1"},
    };
    j["braiding"] = {
        {"diagonal", "q^{(wt m, wt n)} on pinned entries"},
        {"tail", "strictly triangular, raising the first tensor factor"},
    };
    emit(cfg, j.dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-deformed flag-manifold geometry checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string configPath;

    auto addCommon = [&](CLI::App* sub, bool needsFlag) {
        if (needsFlag)
            sub->add_option("flag", cfg.flag, "flag spec, e.g. A3:2")->required();
        sub->add_option("--config", configPath, "key=value config file");
        sub->add_option("--qmin", cfg.qmin, "lower end of the q scan interval");
        sub->add_option("--qmax", cfg.qmax, "upper end of the q scan interval");
        sub->add_option("--samples", cfg.samples, "number of q samples");
        sub->add_option("--shat-norm", cfg.shatNorm, "Shat normalization override, e.g. q^4");
        sub->add_option("--format", cfg.format, "output format: json|csv|pretty");
        sub->add_option("--out", cfg.out, "write the report to this file");
    };

    CLI::App* fiber = app.add_subcommand("fiber-check", "verify the cotangent fiber invariants");
    addCommon(fiber, true);
    CLI::App* einstein = app.add_subcommand("einstein", "run the Ricci/Einstein pipeline");
    addCommon(einstein, true);
    CLI::App* conventions = app.add_subcommand("conventions", "print the conventions ledger");
    addCommon(conventions, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUnsupported;
    }

    try {
        if (!configPath.empty()) {
            // The file provides defaults; explicit command-line flags win.
            RunConfig fileCfg = cfg;
            applyConfigFile(configPath, fileCfg);
            std::swap(cfg, fileCfg);  // cfg = file values, fileCfg = CLI values
            CLI::App* sub = fiber->parsed() ? fiber : (einstein->parsed() ? einstein : conventions);
            if (sub->count("--qmin")) cfg.qmin = fileCfg.qmin;
            if (sub->count("--qmax")) cfg.qmax = fileCfg.qmax;
            if (sub->count("--samples")) cfg.samples = fileCfg.samples;
            if (sub->count("--shat-norm")) cfg.shatNorm = fileCfg.shatNorm;
            if (sub->count("--format")) cfg.format = fileCfg.format;
            if (sub->count("--out")) cfg.out = fileCfg.out;
        }
        if (fiber->parsed()) return cmdFiberCheck(cfg);
        if (einstein->parsed()) return cmdEinstein(cfg);
        return cmdConventions(cfg);
    } catch (const qflag::ScalarError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariantFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    }
}
