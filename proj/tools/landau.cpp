// landau: one experiment per invocation, CSV artifacts with self-describing
// metadata headers.  Exit codes: 0 success, 2 config error, 3 numerical
// non-convergence, 4 resource cap exceeded.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "landau/cluster.hpp"
#include "landau/csv.hpp"
#include "landau/inverse.hpp"
#include "landau/potentials.hpp"
#include "landau/radon.hpp"
#include "landau/reduced.hpp"
#include "landau/specfun.hpp"
#include "landau/weyl.hpp"

namespace {

using namespace landau;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Potential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open potential file: " + path);
    nlohmann::json j;
    try {
        in >> j;
        return potential_from_json(j);
    } catch (const std::exception& e) {
        throw ConfigError("bad potential file " + path + ": " + e.what());
    }
}

// "log:a:b:n" -> geometric grid; "lin:a:b:n" -> uniform grid
std::vector<double> parse_grid(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 4) throw ConfigError("grid spec must be kind:start:stop:count, got " + s);
    double a = std::stod(parts[1]), b = std::stod(parts[2]);
    int n = std::stoi(parts[3]);
    if (n < 2 || b <= a) throw ConfigError("bad grid bounds in " + s);
    std::vector<double> g(n);
    if (parts[0] == "log") {
        if (a <= 0.0) throw ConfigError("log grid requires positive start");
        LogGrid lg(a, b, n);
        g = lg.nodes;
    } else if (parts[0] == "lin") {
        for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    } else {
        throw ConfigError("unknown grid kind " + parts[0]);
    }
    return g;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

void common_meta(CsvWriter& csv, const std::string& cmd) {
    csv.meta("tool", "landau");
    csv.meta("version", "1.0");
    csv.meta("command", cmd);
}

int cmd_radon(const std::string& pot_path, double E, const std::string& mode, double xi_max,
              int points, const std::string& rgrid, const std::string& out) {
    Potential V = load_potential(pot_path);
    CsvWriter csv(out);
    common_meta(csv, "radon");
    csv.meta("potential", pot_path);
    if (mode == "vtilde") {
        csv.meta("energy", E);
        csv.meta("xi_max", xi_max);
        csv.meta("points", points);
        csv.header({"x2", "p2", "vtilde"});
        for (int i = 0; i < points; ++i) {
            double x2 = -xi_max + 2.0 * xi_max * i / (points - 1);
            for (int j = 0; j < points; ++j) {
                double p2 = -xi_max + 2.0 * xi_max * j / (points - 1);
                csv.row({x2, p2, circle_average(V, PhasePoint{x2, p2}, E)});
            }
        }
    } else if (mode == "invariant") {
        csv.meta("r_grid", rgrid);
        csv.header({"r", "I"});
        for (double r : parse_grid(rgrid)) csv.row({r, spectral_invariant_I(V, r)});
    } else {
        throw ConfigError("radon: mode must be vtilde or invariant");
    }
    return 0;
}

int cmd_symbol(const std::string& pot_path, double E, int n, double xi_max, int points,
               const std::string& out) {
    Potential V = load_potential(pot_path);
    SemiclassicalPoint pt(E, n);
    CsvWriter csv(out);
    common_meta(csv, "symbol");
    csv.meta("potential", pot_path);
    csv.meta("energy", E);
    csv.meta("n", n);
    csv.meta("hbar", pt.hbar);
    csv.header({"x2", "p2", "phi", "vtilde"});
    for (int i = 0; i < points; ++i) {
        double x2 = -xi_max + 2.0 * xi_max * i / (points - 1);
        for (int j = 0; j < points; ++j) {
            double p2 = -xi_max + 2.0 * xi_max * j / (points - 1);
            PhasePoint xi{x2, p2};
            csv.row({x2, p2, reduced_symbol(V, xi, pt), circle_average(V, xi, E)});
        }
    }
    return 0;
}

int cmd_reduced_spectrum(const std::string& pot_path, double E, int n, int M,
                         const std::string& out) {
    Potential V = load_potential(pot_path);
    SemiclassicalPoint pt(E, n);
    ClusterMeasure cm = reduced_spectrum(V, pt, M);
    CsvWriter csv(out);
    common_meta(csv, "reduced-spectrum");
    csv.meta("potential", pot_path);
    csv.meta("energy", E);
    csv.meta("n", n);
    csv.meta("hbar", pt.hbar);
    csv.meta("basis", M);
    csv.header({"k", "eigenvalue"});
    for (size_t k = 0; k < cm.eigenvalues.size(); ++k)
        csv.row({(double)k, cm.eigenvalues[k]});
    return 0;
}

int cmd_szego(const std::string& pot_path, double E, const std::string& rho_spec,
              const std::string& n_list_s, const std::string& rule_spec, const std::string& out) {
    Potential V = load_potential(pot_path);
    int power = 2;
    if (rho_spec.rfind("poly:", 0) == 0) power = std::stoi(rho_spec.substr(5));
    else throw ConfigError("szego-check: rho must be poly:k");
    if (power < 1) throw ConfigError("szego-check: rho power must be >= 1 (rho(0)=0)");
    TestFunction rho{power, 1.0};

    BasisRule rule = BasisRule::cover(4.0);
    if (rule_spec.rfind("fixed:", 0) == 0) rule = BasisRule::fixed(std::stoi(rule_spec.substr(6)));
    else if (rule_spec.rfind("cover:", 0) == 0) rule = BasisRule::cover(std::stod(rule_spec.substr(6)));
    else throw ConfigError("szego-check: basis rule must be fixed:M or cover:R");

    auto rows = szego_check(V, E, [&rho](double t) { return rho(t); }, parse_int_list(n_list_s), rule);
    CsvWriter csv(out);
    common_meta(csv, "szego-check");
    csv.meta("potential", pot_path);
    csv.meta("energy", E);
    csv.meta("rho", rho_spec);
    csv.meta("basis_rule", rule_spec);
    csv.header({"n", "hbar", "basis", "lhs", "rhs", "gap"});
    for (const auto& r : rows) csv.row({(double)r.n, r.hbar, (double)r.basis, r.lhs, r.rhs, r.gap});
    return 0;
}

int cmd_cluster(const std::string& pot_path, double E, int n, int N1, int N2, int q,
                const std::string& preset, const std::string& out) {
    Potential V = load_potential(pot_path);
    if (preset == "ci") { n = 3; N1 = N2 = 16; q = 32; }
    SemiclassicalPoint pt(E, n);
    TensorBasisSpec spec{N1, N2, pt.hbar};
    Eigen::MatrixXcd H = assemble_full(V, pt, spec, q);
    std::vector<double> spectrum = full_spectrum(H);
    CsvWriter csv(out);
    common_meta(csv, "cluster-spectrum");
    csv.meta("potential", pot_path);
    csv.meta("energy", E);
    csv.meta("n", n);
    csv.meta("hbar", pt.hbar);
    csv.meta("N1", N1);
    csv.meta("N2", N2);
    csv.meta("q", q);
    csv.header({"k", "eigenvalue", "scaled", "in_cluster"});
    for (size_t k = 0; k < spectrum.size(); ++k) {
        double lam = spectrum[k];
        bool in = std::abs(lam - E) < pt.hbar;
        csv.row({(double)k, lam, (lam - E) / (pt.hbar * pt.hbar), in ? 1.0 : 0.0});
    }
    return 0;
}

int cmd_two_route(const std::string& pot_path, double E, int n, int N1, int N2, int q, int M,
                  const std::string& preset, const std::string& out) {
    Potential V = load_potential(pot_path);
    if (preset == "ci") { n = 3; N1 = N2 = 16; q = 32; M = 8; }
    SemiclassicalPoint pt(E, n);
    TensorBasisSpec spec{N1, N2, pt.hbar};
    TwoRouteReport rep = two_route_check(V, pt, spec, q, M);
    CsvWriter csv(out);
    common_meta(csv, "two-route");
    csv.meta("potential", pot_path);
    csv.meta("energy", E);
    csv.meta("n", n);
    csv.meta("hbar", pt.hbar);
    csv.meta("N1", N1);
    csv.meta("N2", N2);
    csv.meta("q", q);
    csv.meta("M", M);
    csv.meta("max_entry_gap", rep.max_entry_gap);
    csv.header({"i", "eig_2d", "eig_reduced", "gap"});
    for (size_t i = 0; i < rep.eig_2d.size(); ++i)
        csv.row({(double)i, rep.eig_2d[i], rep.eig_reduced[i],
                 std::abs(rep.eig_2d[i] - rep.eig_reduced[i])});
    return 0;
}

int cmd_inverse(const std::string& pot_path, const std::string& rgrid_spec,
                const std::string& lambda_spec, const std::string& out) {
    Potential V = load_potential(pot_path);
    std::vector<double> r_nodes = parse_grid(rgrid_spec);
    double lambda = -1.0;
    if (lambda_spec != "auto") lambda = std::stod(lambda_spec);

    // wide internal profile grid so the forward convolution carries the tail
    LogGrid wide(0.08, 1e4, 600);
    RingProfile Wtrue = ring_profile_from_potential(V, wide);
    ForwardResult fwd = forward_convolve(Wtrue, r_nodes);
    DeconvolveResult dec = mellin_deconvolve(fwd.I, r_nodes, wide, lambda);

    CsvWriter csv(out);
    common_meta(csv, "inverse");
    csv.meta("potential", pot_path);
    csv.meta("r_grid", rgrid_spec);
    csv.meta("lambda", dec.lambda);
    csv.meta("residual", dec.residual_norm);
    csv.meta("clipped_mass_fraction", dec.clipped_mass_fraction);
    csv.header({"rho", "W_true", "W_recovered"});
    for (int i = 0; i < wide.count; ++i)
        csv.row({wide.nodes[i], Wtrue.values[i], dec.W.values[i]});
    return 0;
}

int cmd_sobolev(const std::string& pot_path, const std::string& s_list,
                const std::string& convention, const std::string& out) {
    Potential V = load_potential(pot_path);
    SobolevConvention conv;
    if (convention == "paper") conv = SobolevConvention::Paper;
    else if (convention == "standard") conv = SobolevConvention::Standard;
    else throw ConfigError("sobolev: convention must be paper or standard");
    CsvWriter csv(out);
    common_meta(csv, "sobolev");
    csv.meta("potential", pot_path);
    csv.meta("convention", convention);
    csv.header({"s", "norm_sq"});
    for (double s : parse_double_list(s_list)) csv.row({s, sobolev_norm_sq(V, s, conv)});
    return 0;
}

int cmd_laguerre_zeros(int n, const std::string& out) {
    auto zs = laguerre_zeros(n);
    CsvWriter csv(out);
    common_meta(csv, "laguerre-zeros");
    csv.meta("n", n);
    csv.header({"k", "zero"});
    for (int k = 0; k < n; ++k) csv.row({(double)(k + 1), zs.zeros[k]});
    return 0;
}

int cmd_psi_figure(int n, double E, double u_max, int points, const std::string& out) {
    SemiclassicalPoint pt(E, n);
    CsvWriter csv(out);
    common_meta(csv, "psi-figure");
    csv.meta("n", n);
    csv.meta("energy", E);
    csv.meta("hbar", pt.hbar);
    csv.meta("u_max", u_max);
    csv.header({"u", "psi"});
    for (int i = 0; i < points; ++i) {
        double u = u_max * i / (points - 1);
        csv.row({u, psi_eval(pt, u)});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"landau: spectral-asymptotics experiments for the perturbed Landau Hamiltonian"};
    app.require_subcommand(1);

    std::string pot_path, out = "out.csv", preset = "desk";
    double E = 3.0, xi_max = 3.0, u_max = 5.0;
    int n = 32, M = 64, points = 33, N1 = 24, N2 = 24, q = 48;
    std::string mode = "vtilde", rgrid = "log:0.1:10:64", rho_spec = "poly:2";
    std::string n_list = "16,32,64", rule_spec = "cover:4", lambda_spec = "auto";
    std::string s_list = "-2,-1,0,1,2", convention = "paper";

    auto add_common = [&](CLI::App* c, bool needs_potential = true) {
        if (needs_potential) c->add_option("--potential", pot_path, "potential spec (JSON)")->required();
        c->add_option("--out", out, "output CSV path");
    };

    auto* c_radon = app.add_subcommand("radon", "circle averages or the invariant I(r)");
    add_common(c_radon);
    c_radon->add_option("--energy", E);
    c_radon->add_option("--mode", mode, "vtilde | invariant");
    c_radon->add_option("--xi-max", xi_max);
    c_radon->add_option("--points", points);
    c_radon->add_option("--r-grid", rgrid);

    auto* c_symbol = app.add_subcommand("symbol", "reduced symbol Phi(xi, n) on a grid");
    add_common(c_symbol);
    c_symbol->add_option("--energy", E);
    c_symbol->add_option("--n", n);
    c_symbol->add_option("--xi-max", xi_max);
    c_symbol->add_option("--points", points);

    auto* c_rs = app.add_subcommand("reduced-spectrum", "spectrum of the truncated T_n");
    add_common(c_rs);
    c_rs->add_option("--energy", E);
    c_rs->add_option("--n", n);
    c_rs->add_option("--basis", M);

    auto* c_sz = app.add_subcommand("szego-check", "trace limit table");
    add_common(c_sz);
    c_sz->add_option("--energy", E);
    c_sz->add_option("--rho", rho_spec, "poly:k -> t^k * bump");
    c_sz->add_option("--n-list", n_list);
    c_sz->add_option("--basis-rule", rule_spec, "fixed:M | cover:R");

    auto* c_cl = app.add_subcommand("cluster-spectrum", "full 2D spectrum and cluster");
    add_common(c_cl);
    c_cl->add_option("--energy", E);
    c_cl->add_option("--n", n)->default_val(6);
    c_cl->add_option("--N1", N1);
    c_cl->add_option("--N2", N2);
    c_cl->add_option("--q", q);
    c_cl->add_option("--preset", preset, "ci | desk");

    auto* c_tr = app.add_subcommand("two-route", "2D block vs reduced matrix");
    add_common(c_tr);
    c_tr->add_option("--energy", E);
    c_tr->add_option("--n", n)->default_val(6);
    c_tr->add_option("--N1", N1);
    c_tr->add_option("--N2", N2);
    c_tr->add_option("--q", q);
    c_tr->add_option("--M", M)->default_val(16);
    c_tr->add_option("--preset", preset, "ci | desk");

    auto* c_inv = app.add_subcommand("inverse", "ring-profile recovery from I(r)");
    add_common(c_inv);
    c_inv->add_option("--r-grid", rgrid);
    c_inv->add_option("--lambda", lambda_spec, "auto | value");

    auto* c_sob = app.add_subcommand("sobolev", "Sobolev norm invariants");
    add_common(c_sob);
    c_sob->add_option("--s", s_list);
    c_sob->add_option("--convention", convention, "paper | standard");

    auto* c_lz = app.add_subcommand("laguerre-zeros", "zeros of L_n");
    add_common(c_lz, false);
    c_lz->add_option("--n", n)->required();

    auto* c_psi = app.add_subcommand("psi-figure", "psi_n curve data");
    add_common(c_psi, false);
    c_psi->add_option("--n", n)->default_val(100);
    c_psi->add_option("--energy", E);
    c_psi->add_option("--u-max", u_max);
    c_psi->add_option("--points", points)->default_val(2000);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (c_radon->parsed()) rc = cmd_radon(pot_path, E, mode, xi_max, points, rgrid, out);
        else if (c_symbol->parsed()) rc = cmd_symbol(pot_path, E, n, xi_max, points, out);
        else if (c_rs->parsed()) rc = cmd_reduced_spectrum(pot_path, E, n, M, out);
        else if (c_sz->parsed()) rc = cmd_szego(pot_path, E, rho_spec, n_list, rule_spec, out);
        else if (c_cl->parsed()) rc = cmd_cluster(pot_path, E, n, N1, N2, q, preset, out);
        else if (c_tr->parsed()) rc = cmd_two_route(pot_path, E, n, N1, N2, q, M, preset, out);
        else if (c_inv->parsed()) rc = cmd_inverse(pot_path, rgrid, lambda_spec, out);
        else if (c_sob->parsed()) rc = cmd_sobolev(pot_path, s_list, convention, out);
        else if (c_lz->parsed()) rc = cmd_laguerre_zeros(n, out);
        else if (c_psi->parsed()) rc = cmd_psi_figure(n, E, u_max, points, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("cap") != std::string::npos || msg.find("memory") != std::string::npos)
            return 4;
        return 3;  // numerical non-convergence or solver failure
    }
    auto t1 = std::chrono::steady_clock::now();
    // wall time to stderr only: output files stay byte-identical across runs
    std::cerr << "wall_time_s="
              << std::chrono::duration<double>(t1 - t0).count() << "\n";
    return rc;
}
