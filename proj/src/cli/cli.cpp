#include "critint/cli.hpp"

#include "critint/critsys.hpp"
#include "critint/dynamics.hpp"
#include "critint/json_exact.hpp"
#include "critint/kovacic.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <unistd.h>

namespace critint::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

struct SystemFlags {
    int k = 0;
    int eps = 1;
    std::string mu;

    void attach(CLI::App* app) {
        app->add_option("--k", k, "exponent k >= 2")->required();
        app->add_option("--eps", eps, "sign eps, +1 or -1")->check(CLI::IsMember({1, -1}));
        app->add_option("--mu", mu, "comma-separated exact rationals, e.g. 1,5/2,-3")->required();
    }

    critsys::SystemParams params() const {
        critsys::SystemParams p{k, eps, parse_rat_list(mu)};
        p.validate();
        return p;
    }
};

int verdict_code(critsys::Verdict v) { return v == critsys::Verdict::Integrable ? kExitOk : kExitNonIntegrable; }

void emit(std::ostream& out, const json& j, const std::string& path) {
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!path.empty()) write_file_atomic(path, text);
}

json mu_json(const critsys::SystemParams& p) {
    json a = json::array();
    for (const auto& x : p.mu) a.push_back(x.str());
    return a;
}

int coordinate_index(int m, const std::string& name) {
    static const std::regex re("([uv])([0-9]+)");
    std::smatch match;
    if (!std::regex_match(name, match, re)) throw std::invalid_argument("coordinate must look like u1 or v2: " + name);
    const int i = std::stoi(match[2].str());
    if (i < 1 || i > m) throw std::invalid_argument("coordinate index out of range: " + name);
    return (match[1].str() == "u" ? 0 : m) + i - 1;
}

struct Monitor {
    std::string name;
    PolyObservable observable;
};

std::vector<Monitor> parse_monitors(const critsys::SystemParams& p, const std::string& text) {
    static const std::regex pair_re("L([0-9]+)_([0-9]+)"), digits_re("L([0-9])([0-9])");
    std::vector<Monitor> out;
    for (auto name : split(text, ',')) {
        name = trim(name);
        if (name.empty()) continue;
        if (name == "H") {
            out.push_back({name, critsys::hamiltonian(p)});
            continue;
        }
        std::smatch m;
        if (!std::regex_match(name, m, pair_re) && !std::regex_match(name, m, digits_re))
            throw std::invalid_argument("unknown monitor '" + name + "'; use H or Lij");
        const int i = std::stoi(m[1].str()), j = std::stoi(m[2].str());
        if (i < 1 || j < 1 || i > p.m() || j > p.m() || i == j) throw std::invalid_argument("bad monitor indices in " + name);
        out.push_back({name, critsys::angular_momentum(p.m(), i - 1, j - 1)});
    }
    return out;
}

dynamics::State state_from(const std::vector<double>& x, int m) {
    if (x.size() != static_cast<std::size_t>(2 * m))
        throw std::invalid_argument("a state needs " + std::to_string(2 * m) + " numbers (u1..um, v1..vm)");
    dynamics::State s;
    s.u.assign(x.begin(), x.begin() + m);
    s.v.assign(x.begin() + m, x.end());
    return s;
}

int cmd_classify(const SystemFlags& sys, const std::string& out_path, std::ostream& out) {
    const auto cert = critsys::classify_integrability(sys.params());
    emit(out, critsys::certificate_json(cert), out_path);
    return verdict_code(cert.verdict);
}

int cmd_anve(const SystemFlags& sys, int pivot, int other, const std::string& out_path, std::ostream& out) {
    const auto p = sys.params();
    if (pivot < 1 || pivot > p.m()) throw std::invalid_argument("--pivot must be in 1.." + std::to_string(p.m()));
    if (other == 0) other = pivot == 1 ? 2 : 1;
    if (other < 1 || other > p.m() || other == pivot)
        throw std::invalid_argument("--other must be in 1.." + std::to_string(p.m()) + " and differ from --pivot");
    if (p.mu[static_cast<std::size_t>(pivot - 1)].is_zero())
        throw std::invalid_argument("mu_" + std::to_string(pivot) +
                                    " is zero: this plane needs the degenerate reduction; run `classify`, whose "
                                    "kovacic_trace carries it, or `kovacic` on its normal form");
    const auto eq = critsys::anve(p, pivot - 1, other - 1);
    const auto diffs = hypergeom::exponent_differences(eq);
    json j = {{"k", p.k},
              {"eps", p.eps},
              {"mu", mu_json(p)},
              {"pivot", pivot},
              {"other", other},
              {"coefficients", {{"p", eq.p_coefficient()}, {"q", eq.q_coefficient()}}},
              {"exponents", eq},
              {"differences", diffs},
              {"kimura", hypergeom::identity_component_solvable(diffs)}};
    emit(out, j, out_path);
    return kExitOk;
}

int cmd_kovacic(const std::string& r_text, const std::string& out_path, std::ostream& out) {
    const RatFunc r = RatFunc::parse(r_text);
    const auto n = kovacic::normal_form(r);
    json j = {{"normal", n}, {"trace", kovacic::classify_galois(n)}};
    emit(out, j, out_path);
    return kExitOk;
}

struct SimulateFlags {
    std::string u0, v0, monitor = "H", csv, report;
    double dt = 1e-3, T = 10, escape = 1e6;
};

int cmd_simulate(const SystemFlags& sys, const SimulateFlags& f, std::ostream& out) {
    const auto p = sys.params();
    auto x = parse_double_list(f.u0);
    const auto v = parse_double_list(f.v0);
    x.insert(x.end(), v.begin(), v.end());
    const auto x0 = state_from(x, p.m());
    const auto monitors = parse_monitors(p, f.monitor);

    dynamics::Trajectory traj;
    json status = {{"status", "completed"}};
    int code = kExitOk;
    try {
        traj = dynamics::integrate(p, x0, f.dt, f.T, {f.escape});
    } catch (const dynamics::IntegrationError& e) {
        traj = e.partial();
        status = {{"status", e.kind() == dynamics::IntegrationError::Kind::Escape ? "escaped" : "non_finite"},
                  {"message", e.what()},
                  {"t_stop", e.state().t}};
        code = kExitStoppedEarly;
    }
    if (!f.csv.empty()) {
        std::ostringstream os;
        dynamics::write_trajectory_csv(os, p, traj);
        write_file_atomic(f.csv, os.str());
    }
    json drift = json::array();
    for (const auto& m : monitors) drift.push_back(dynamics::observable_drift(traj, m.observable, m.name));
    json j = status;
    j["params"] = dynamics::digest(p);
    j["steps"] = traj.states.empty() ? 0 : traj.states.size() - 1;
    j["drift"] = drift;
    emit(out, j, f.report);
    return code;
}

struct PoincareFlags {
    std::string seeds, section = "u1", record, csv;
    int direction = 1;
    double dt = 1e-3, T = 100, escape = 1e6, energy_tol = 1e-9;
    bool serial = false;
};

int cmd_poincare(const SystemFlags& sys, const PoincareFlags& f, std::ostream& out) {
    const auto p = sys.params();
    const int m = p.m();
    std::vector<dynamics::State> seeds;
    for (const auto& s : split(f.seeds, ';'))
        if (!trim(s).empty()) seeds.push_back(state_from(parse_double_list(s), m));
    dynamics::SectionSpec spec;
    spec.section = coordinate_index(m, f.section);
    spec.direction = f.direction;
    std::vector<std::string> rec;
    if (f.record.empty()) {
        // first two coordinates that are not the section one
        for (int i = 0; i < 2 * m && rec.size() < 2; ++i)
            if (i != spec.section) rec.push_back(dynamics::coordinate_name(m, i));
    } else {
        rec = split(f.record, ',');
    }
    if (rec.size() != 2) throw std::invalid_argument("--record takes exactly two coordinates");
    spec.first = coordinate_index(m, trim(rec[0]));
    spec.second = coordinate_index(m, trim(rec[1]));

    dynamics::SectionOptions opt;
    opt.parallel = !f.serial;
    opt.energy_tol = f.energy_tol;
    opt.integrate.escape_bound = f.escape;
    const auto result = dynamics::poincare_section(p, seeds, spec, f.dt, f.T, opt);
    std::ostringstream os;
    dynamics::write_section_csv(os, m, spec, result);
    write_file_atomic(f.csv, os.str());

    json errors = json::array();
    for (const auto& [seed, msg] : result.errors) errors.push_back({{"seed", seed}, {"message", msg}});
    emit(out, {{"points", result.points.size()}, {"seeds", seeds.size()}, {"errors", errors}}, "");
    return result.errors.empty() ? kExitOk : kExitStoppedEarly;
}

struct QuadratureFlags {
    int pivot = 1;
    double h = 0, ua = 0, ub = 0, dt = 1e-4;
    bool cross_check = false;
};

int cmd_quadrature(const SystemFlags& sys, const QuadratureFlags& f, std::ostream& out) {
    const auto p = sys.params();
    if (f.pivot < 1 || f.pivot > p.m()) throw std::invalid_argument("--pivot out of range");
    const critsys::RestrictedSystem rs{p, f.pivot - 1};
    const double tof = dynamics::time_of_flight(rs, f.h, f.ua, f.ub);
    json j = {{"pivot", f.pivot}, {"h", f.h}, {"ua", f.ua}, {"ub", f.ub}, {"time_of_flight", tof}};
    if (f.cross_check) {
        // start at ua with the energy-h speed pointing towards ub
        const double rad = 2 * f.h + rs.radicand_shape().eval(f.ua);
        const double speed = rad > 0 ? std::sqrt(rad) : 0.0;
        const double v0 = f.ub >= f.ua ? speed : -speed;
        const double transit = dynamics::transit_time(rs, f.ua, v0, f.ub, f.dt, 10 * tof + 10);
        const double dev = tof != 0 ? std::abs(transit - tof) / tof : std::abs(transit);
        j["transit_time"] = transit;
        j["dt"] = f.dt;
        j["relative_deviation"] = dev;
    }
    emit(out, j, "");
    return kExitOk;
}

int cmd_verify(const std::string& path, std::ostream& out) {
    json cert;
    if (path == "-") {
        cert = json::parse(std::cin);
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        cert = json::parse(in);
    }
    const auto r = critsys::replay_certificate(cert);
    emit(out, {{"consistent", r.consistent}, {"verdict", critsys::to_string(r.verdict)}, {"problems", r.problems}}, "");
    return r.consistent ? verdict_code(r.verdict) : kExitError;
}

}  // namespace

std::vector<Rat> parse_rat_list(std::string_view text) {
    std::vector<Rat> out;
    for (const auto& part : split(text, ',')) {
        const std::string t = trim(part);
        if (t.empty()) throw std::invalid_argument("empty entry in list '" + std::string(text) + "'");
        out.push_back(Rat::parse(t));
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        const std::string t = trim(part);
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size() || !std::isfinite(x)) throw std::invalid_argument("not a number: '" + t + "'");
        out.push_back(x);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << contents;
        f.close();
        if (!f) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integrability analysis and numerics for u_i'' = -mu_i u_i + eps (sum u_j^2)^(k-1) u_i"};
    app.name("critint");
    app.require_subcommand(1);

    SystemFlags sys;
    std::string out_path;

    auto* classify = app.add_subcommand("classify", "integrability verdict with a replayable certificate");
    sys.attach(classify);
    classify->add_option("--out", out_path, "also write the certificate to this file");

    int pivot = 1, other = 0;
    auto* anve = app.add_subcommand("anve", "hypergeometric normal variational equation for one plane");
    sys.attach(anve);
    anve->add_option("--pivot", pivot, "1-based index of the invariant plane");
    anve->add_option("--other", other, "1-based index of the normal direction (default: first other index)");
    anve->add_option("--out", out_path, "also write the JSON to this file");

    std::string r_text;
    auto* kov = app.add_subcommand("kovacic", "Kovacic analysis of chi'' = r chi");
    kov->add_option("--r", r_text, "r as 'num;den', each a coefficient list or an expression in z")->required();
    kov->add_option("--out", out_path, "also write the JSON to this file");

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "leapfrog run with conservation monitors");
    sys.attach(simulate);
    simulate->add_option("--u0", sim.u0, "initial u, comma-separated")->required();
    simulate->add_option("--v0", sim.v0, "initial v, comma-separated")->required();
    simulate->add_option("--dt", sim.dt, "step size");
    simulate->add_option("--T", sim.T, "duration");
    simulate->add_option("--monitor", sim.monitor, "observables to monitor: H, Lij or Li_j, comma-separated");
    simulate->add_option("--csv", sim.csv, "trajectory CSV path");
    simulate->add_option("--report", sim.report, "drift report JSON path");
    simulate->add_option("--escape-bound", sim.escape, "abort once |u_i| exceeds this");

    PoincareFlags pc;
    auto* poincare = app.add_subcommand("poincare", "section crossings for a batch of seeds");
    sys.attach(poincare);
    poincare->add_option("--seeds", pc.seeds, "states 'u1,..,um,v1,..,vm' separated by ';'");
    poincare->add_option("--section", pc.section, "section coordinate, e.g. u1");
    poincare->add_option("--direction", pc.direction, "crossing direction +1 or -1")->check(CLI::IsMember({1, -1}));
    poincare->add_option("--record", pc.record, "two recorded coordinates, e.g. u2,v2");
    poincare->add_option("--dt", pc.dt, "step size");
    poincare->add_option("--T", pc.T, "duration per seed");
    poincare->add_option("--csv", pc.csv, "section CSV path")->required();
    poincare->add_option("--escape-bound", pc.escape, "abort a seed once |u_i| exceeds this");
    poincare->add_option("--energy-tol", pc.energy_tol, "allowed energy spread between seeds");
    poincare->add_flag("--serial", pc.serial, "run seeds one after another");

    QuadratureFlags qf;
    auto* quad = app.add_subcommand("quadrature", "time of flight along an invariant plane");
    sys.attach(quad);
    quad->add_option("--pivot", qf.pivot, "1-based index of the plane");
    quad->set_help_flag("--help", "Print this help message and exit");
    quad->add_option("--h", qf.h, "energy level")->required();
    quad->add_option("--ua", qf.ua, "start coordinate")->required();
    quad->add_option("--ub", qf.ub, "end coordinate")->required();
    quad->add_flag("--cross-check", qf.cross_check, "compare against an integrated transit time");
    quad->add_option("--dt", qf.dt, "step size for the cross-check");

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "replay a classification certificate");
    verify->add_option("--certificate", cert_path, "certificate JSON path, or - for standard input")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*classify) return cmd_classify(sys, out_path, out);
        if (*anve) return cmd_anve(sys, pivot, other, out_path, out);
        if (*kov) return cmd_kovacic(r_text, out_path, out);
        if (*simulate) return cmd_simulate(sys, sim, out);
        if (*poincare) return cmd_poincare(sys, pc, out);
        if (*quad) return cmd_quadrature(sys, qf, out);
        if (*verify) return cmd_verify(cert_path, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace critint::cli
