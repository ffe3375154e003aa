// Command-line front end: single-point evaluation, region diagnosis,
// parameter sweeps, and verification against the quadrature/Macdonald oracles.
//
// Exit codes: 0 ok, 1 usage or other error, 2 invalid zeta, 3 no valid region
// (or forced representation out of region), 4 no convergence, 5 verify failure.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rdgreen/greens_function.hpp"
#include "rdgreen/oracle.hpp"

using rdgreen::ComplexScalar;
using ojson = nlohmann::ordered_json;

namespace {

std::string fmt_g(double v) {
    if (v == 0.0)
        v = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_c(ComplexScalar z) {
    double re = z.real() == 0.0 ? 0.0 : z.real();
    double im = z.imag() == 0.0 ? 0.0 : z.imag();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", re, im);
    return buf;
}

ojson jc(ComplexScalar z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }
ojson jr(double v) { return ojson{{"re", v}, {"im", 0.0}}; }

double parse_double_strict(const std::string& t) {
    if (t.empty())
        throw rdgreen::Error("empty number");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw rdgreen::Error("cannot parse number '" + t + "'");
    return v;
}

// a+bi / a-bi with no spaces; plain reals get imaginary part 0.
ComplexScalar parse_zeta(const std::string& s) {
    auto fail = [&]() -> ComplexScalar {
        throw rdgreen::InvalidZeta("cannot parse zeta '" + s + "' (expected forms: -5, -4+2i, 1.5-0.25i)");
    };
    if (s.empty() || s.find(' ') != std::string::npos)
        return fail();
    try {
        if (s.back() == 'i' || s.back() == 'I') {
            std::string body = s.substr(0, s.size() - 1);
            if (body.empty())
                return fail();
            size_t split = std::string::npos;
            for (size_t j = body.size(); j-- > 1;) {
                char c = body[j];
                if ((c == '+' || c == '-') && body[j - 1] != 'e' && body[j - 1] != 'E') {
                    split = j;
                    break;
                }
            }
            std::string re_str = "0", im_str = body;
            if (split != std::string::npos) {
                re_str = body.substr(0, split);
                im_str = body.substr(split);
            }
            if (im_str == "+" || im_str == "-")
                im_str += "1";
            return {parse_double_strict(re_str), parse_double_strict(im_str)};
        }
        return {parse_double_strict(s), 0.0};
    } catch (const rdgreen::Error&) {
        return fail();
    }
}

rdgreen::EvalPoint parse_point(const std::string& s) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(parse_double_strict(item));
    if (parts.size() != 3)
        throw rdgreen::Error("--x expects three comma-separated numbers, got '" + s + "'");
    return rdgreen::make_point(parts[0], parts[1], parts[2]);
}

rdgreen::RepChoice parse_rep(const std::string& s) {
    static const std::map<std::string, rdgreen::RepChoice> m = {
        {"auto", rdgreen::RepChoice::Auto}, {"x1", rdgreen::RepChoice::X1},
        {"x2", rdgreen::RepChoice::X2},     {"x3", rdgreen::RepChoice::X3},
        {"xp1", rdgreen::RepChoice::Xp1},   {"xp2", rdgreen::RepChoice::Xp2},
        {"xp3", rdgreen::RepChoice::Xp3},   {"a", rdgreen::RepChoice::Xp1},
        {"b", rdgreen::RepChoice::Xp2},     {"c", rdgreen::RepChoice::Xp3}};
    return m.at(s);
}

// RFC-4180-style: quote when the field holds comma, quote, or newline.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CommonOpts {
    double alpha = 0.0;
    double beta = 0.0;
    std::string zeta_str;
    std::string x_str = "0,0,1";
    double tol_rel = rdgreen::kDefaultTolRel;
    long max_terms = rdgreen::kDefaultOuterCap;
    std::string rep_str = "auto";
    std::string format = "text";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_rep = true) {
    cmd->add_option("--alpha", o.alpha, "spin-orbit strength (>= 0)")->capture_default_str();
    cmd->add_option("--beta", o.beta, "Zeeman field (>= 0)")->capture_default_str();
    cmd->add_option("--zeta", o.zeta_str, "spectral parameter, a+bi with no spaces")->required();
    cmd->add_option("--x", o.x_str, "evaluation point x1,x2,x3")->capture_default_str();
    cmd->add_option("--tol-rel", o.tol_rel, "series stopping tolerance")->capture_default_str();
    cmd->add_option("--max-terms", o.max_terms, "outer-series term cap")->capture_default_str();
    if (with_rep)
        cmd->add_option("--rep", o.rep_str, "series representation: auto,x1,x2,x3,xp1,xp2,xp3 or theorem label a,b,c")
            ->check(CLI::IsMember({"auto", "x1", "x2", "x3", "xp1", "xp2", "xp3", "a", "b", "c"}));
    cmd->add_option("--format,-f", o.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", o.out_path, "write output to file instead of stdout");
}

void emit(const CommonOpts& o, const std::string& payload) {
    if (o.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f)
        throw rdgreen::Error("cannot open output file '" + o.out_path + "'");
    f << payload;
}

std::string error_tag(const rdgreen::Error& e) {
    if (dynamic_cast<const rdgreen::InvalidZeta*>(&e)) return "InvalidZeta";
    if (dynamic_cast<const rdgreen::NoValidRegion*>(&e)) return "NoValidRegion";
    if (dynamic_cast<const rdgreen::OutOfRegion*>(&e)) return "OutOfRegion";
    if (dynamic_cast<const rdgreen::NoConvergence*>(&e)) return "NoConvergence";
    if (dynamic_cast<const rdgreen::QuadFailure*>(&e)) return "QuadFailure";
    if (dynamic_cast<const rdgreen::ParameterPole*>(&e)) return "ParameterPole";
    if (dynamic_cast<const rdgreen::OriginNotAllowed*>(&e)) return "OriginNotAllowed";
    if (dynamic_cast<const rdgreen::DomainError*>(&e)) return "DomainError";
    return "Error";
}

int exit_code_for(const rdgreen::Error& e) {
    if (dynamic_cast<const rdgreen::InvalidZeta*>(&e)) return 2;
    if (dynamic_cast<const rdgreen::NoValidRegion*>(&e)) return 3;
    if (dynamic_cast<const rdgreen::OutOfRegion*>(&e)) return 3;
    if (dynamic_cast<const rdgreen::NoConvergence*>(&e)) return 4;
    if (dynamic_cast<const rdgreen::QuadFailure*>(&e)) return 4;
    return 1;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const CommonOpts& o) {
    rdgreen::PhysicalParams p{o.alpha, o.beta, parse_zeta(o.zeta_str)};
    rdgreen::EvalPoint x = parse_point(o.x_str);
    rdgreen::RepChoice rep = parse_rep(o.rep_str);
    rdgreen::validate_params(p);

    auto r1 = rdgreen::g1_detailed(x, p, rdgreen::EvalPath::Prefer_closed, rep, o.tol_rel, o.max_terms);
    auto r2 = rdgreen::g2_detailed(x, p, rdgreen::EvalPath::Prefer_closed, rep, o.tol_rel, o.max_terms);
    ComplexScalar dp = rdgreen::dpm_g1(x, p, +1);
    ComplexScalar dm = rdgreen::dpm_g1(x, p, -1);
    ComplexScalar g11 = r2.value - p.beta * r1.value;
    ComplexScalar g12 = -p.alpha * dm;
    ComplexScalar g21 = p.alpha * dp;
    ComplexScalar g22 = r2.value + p.beta * r1.value;
    double sigma = rdgreen::sigma_threshold(p.alpha, p.beta);
    auto flags = rdgreen::theorem_condition_flags(p);

    std::ostringstream out;
    if (o.format == "text") {
        out << "alpha   " << fmt_g(p.alpha) << "\n";
        out << "beta    " << fmt_g(p.beta) << "\n";
        out << "zeta    " << fmt_c(p.zeta) << "\n";
        out << "x       (" << fmt_g(x.x1) << ", " << fmt_g(x.x2) << ", " << fmt_g(x.x3)
            << ")  r = " << fmt_g(x.r) << "\n";
        out << "sigma   " << fmt_g(sigma) << "\n";
        out << "conditions  (a) " << (flags.a ? "true" : "false") << "  (b) "
            << (flags.b ? "true" : "false") << "  (c) " << (flags.c ? "true" : "false") << "\n";
        out << "G1      " << fmt_c(r1.value) << "   [" << r1.representation << ", terms "
            << r1.terms_used << ", est " << fmt_g(r1.est_error) << "]\n";
        out << "G2      " << fmt_c(r2.value) << "   [" << r2.representation << ", terms "
            << r2.terms_used << ", est " << fmt_g(r2.est_error) << "]\n";
        out << "D+G1    " << fmt_c(dp) << "\n";
        out << "D-G1    " << fmt_c(dm) << "\n";
        out << "g11     " << fmt_c(g11) << "\n";
        out << "g12     " << fmt_c(g12) << "\n";
        out << "g21     " << fmt_c(g21) << "\n";
        out << "g22     " << fmt_c(g22) << "\n";
    } else if (o.format == "json") {
        ojson j;
        j["params"] = {{"alpha", jr(p.alpha)}, {"beta", jr(p.beta)}, {"zeta", jc(p.zeta)}};
        j["x"] = {{"x1", jr(x.x1)}, {"x2", jr(x.x2)}, {"x3", jr(x.x3)}, {"r", jr(x.r)}};
        j["sigma"] = jr(sigma);
        j["conditions"] = {{"a", flags.a}, {"b", flags.b}, {"c", flags.c}};
        j["g1"] = {{"value", jc(r1.value)}, {"representation", r1.representation},
                   {"terms", r1.terms_used}, {"est_error", jr(r1.est_error)}};
        j["g2"] = {{"value", jc(r2.value)}, {"representation", r2.representation},
                   {"terms", r2.terms_used}, {"est_error", jr(r2.est_error)}};
        j["dp_g1"] = jc(dp);
        j["dm_g1"] = jc(dm);
        j["matrix"] = {{"g11", jc(g11)}, {"g12", jc(g12)}, {"g21", jc(g21)}, {"g22", jc(g22)}};
        out << j.dump(2) << "\n";
    } else {
        out << "alpha,beta,zeta_re,zeta_im,x1,x2,x3,r,sigma,cond_a,cond_b,cond_c,"
               "g1_re,g1_im,g1_rep,g1_terms,g1_est,g2_re,g2_im,g2_rep,g2_terms,g2_est,"
               "dpg1_re,dpg1_im,dmg1_re,dmg1_im,"
               "g11_re,g11_im,g12_re,g12_im,g21_re,g21_im,g22_re,g22_im\n";
        out << fmt_g(p.alpha) << ',' << fmt_g(p.beta) << ',' << fmt_g(p.zeta.real()) << ','
            << fmt_g(p.zeta.imag()) << ',' << fmt_g(x.x1) << ',' << fmt_g(x.x2) << ','
            << fmt_g(x.x3) << ',' << fmt_g(x.r) << ',' << fmt_g(sigma) << ','
            << (flags.a ? 1 : 0) << ',' << (flags.b ? 1 : 0) << ',' << (flags.c ? 1 : 0) << ','
            << fmt_g(r1.value.real()) << ',' << fmt_g(r1.value.imag()) << ','
            << csv_field(r1.representation) << ',' << r1.terms_used << ',' << fmt_g(r1.est_error)
            << ',' << fmt_g(r2.value.real()) << ',' << fmt_g(r2.value.imag()) << ','
            << csv_field(r2.representation) << ',' << r2.terms_used << ',' << fmt_g(r2.est_error)
            << ',' << fmt_g(dp.real()) << ',' << fmt_g(dp.imag()) << ',' << fmt_g(dm.real()) << ','
            << fmt_g(dm.imag()) << ',' << fmt_g(g11.real()) << ',' << fmt_g(g11.imag()) << ','
            << fmt_g(g12.real()) << ',' << fmt_g(g12.imag()) << ',' << fmt_g(g21.real()) << ','
            << fmt_g(g21.imag()) << ',' << fmt_g(g22.real()) << ',' << fmt_g(g22.imag()) << "\n";
    }
    emit(o, out.str());
    return 0;
}

// ---------------------------------------------------------------- region

int cmd_region(const CommonOpts& o) {
    rdgreen::PhysicalParams p{o.alpha, o.beta, parse_zeta(o.zeta_str)};
    rdgreen::EvalPoint x = parse_point(o.x_str);
    double sigma = rdgreen::sigma_threshold(p.alpha, p.beta);
    double dist = rdgreen::zeta_spectrum_distance(p.zeta, sigma);
    bool member = p.alpha >= 0.0 && p.beta >= 0.0 && dist >= rdgreen::kZetaMargin;
    auto flags = rdgreen::theorem_condition_flags(p);

    bool have_v = p.beta >= rdgreen::kDegenerateEps;
    rdgreen::TripleArg v, u;
    rdgreen::XpRegionFlags vf, uf;
    if (have_v) {
        v = {p.beta * p.beta / (4.0 * p.zeta * p.zeta),
             -p.zeta * p.alpha * p.alpha / (p.beta * p.beta), p.zeta * x.r * x.r / 4.0};
        vf = rdgreen::classify_xprime_region(v, {{0.5, 0.0}, {1.5, 0.0}});
    }
    u = {p.beta * p.beta * std::pow(x.r, 4) / 64.0, -p.alpha * p.alpha * x.r * x.r / 16.0,
         -p.zeta * x.r * x.r / 4.0};
    uf = rdgreen::classify_xprime_region(u, {{1.5, 0.0}, {1.5, 0.0}});

    auto flag_str = [](bool b) { return b ? "true" : "false"; };
    std::ostringstream out;
    if (o.format == "text") {
        out << "alpha   " << fmt_g(p.alpha) << "\n";
        out << "beta    " << fmt_g(p.beta) << "\n";
        out << "zeta    " << fmt_c(p.zeta) << "\n";
        out << "r       " << fmt_g(x.r) << "\n";
        out << "sigma   " << fmt_g(sigma) << "\n";
        if (member)
            out << "resolvent set: member (distance " << fmt_g(dist) << ")\n";
        else
            out << "resolvent set: zeta inside essential spectrum interval [-sigma, inf) - invalid\n";
        out << "conditions  (a) " << flag_str(flags.a) << "  (b) " << flag_str(flags.b) << "  (c) "
            << flag_str(flags.c) << "\n";
        if (have_v)
            out << "v triple (" << fmt_c(v.z1) << ", " << fmt_c(v.z2) << ", " << fmt_c(v.z3)
                << "): xp1 " << flag_str(vf.xp1) << ", xp2 " << flag_str(vf.xp2) << ", xp3 "
                << flag_str(vf.xp3) << "\n";
        else
            out << "v triple undefined at beta = 0\n";
        out << "u triple (" << fmt_c(u.z1) << ", " << fmt_c(u.z2) << ", " << fmt_c(u.z3)
            << "): xp1 " << flag_str(uf.xp1) << ", xp2 " << flag_str(uf.xp2) << ", xp3 "
            << flag_str(uf.xp3) << "\n";
    } else if (o.format == "json") {
        ojson j;
        j["params"] = {{"alpha", jr(p.alpha)}, {"beta", jr(p.beta)}, {"zeta", jc(p.zeta)}};
        j["r"] = jr(x.r);
        j["sigma"] = jr(sigma);
        j["spectrum_distance"] = jr(dist);
        j["resolvent_member"] = member;
        j["conditions"] = {{"a", flags.a}, {"b", flags.b}, {"c", flags.c}};
        if (have_v)
            j["v"] = {{"z1", jc(v.z1)}, {"z2", jc(v.z2)}, {"z3", jc(v.z3)},
                      {"xp1", vf.xp1},  {"xp2", vf.xp2},  {"xp3", vf.xp3}};
        else
            j["v"] = nullptr;
        j["u"] = {{"z1", jc(u.z1)}, {"z2", jc(u.z2)}, {"z3", jc(u.z3)},
                  {"xp1", uf.xp1},  {"xp2", uf.xp2},  {"xp3", uf.xp3}};
        out << j.dump(2) << "\n";
    } else {
        out << "alpha,beta,zeta_re,zeta_im,r,sigma,distance,resolvent_member,cond_a,cond_b,cond_c,"
               "v_xp1,v_xp2,v_xp3,u_xp1,u_xp2,u_xp3\n";
        out << fmt_g(p.alpha) << ',' << fmt_g(p.beta) << ',' << fmt_g(p.zeta.real()) << ','
            << fmt_g(p.zeta.imag()) << ',' << fmt_g(x.r) << ',' << fmt_g(sigma) << ','
            << fmt_g(dist) << ',' << (member ? 1 : 0) << ',' << (flags.a ? 1 : 0) << ','
            << (flags.b ? 1 : 0) << ',' << (flags.c ? 1 : 0) << ',' << (have_v ? (vf.xp1 ? "1" : "0") : "")
            << ',' << (have_v ? (vf.xp2 ? "1" : "0") : "") << ',' << (have_v ? (vf.xp3 ? "1" : "0") : "")
            << ',' << (uf.xp1 ? 1 : 0) << ',' << (uf.xp2 ? 1 : 0) << ',' << (uf.xp3 ? 1 : 0) << "\n";
    }
    emit(o, out.str());
    return 0;
}

// ---------------------------------------------------------------- table

struct SweepOpts {
    std::string var = "r";
    double start = 0.0;
    double stop = 0.0;
    long count = 0;
    int threads = 1;
};

struct Row {
    double value = 0.0;
    bool ok = false;
    ComplexScalar g1v, g2v, dpv;
    std::string g1_rep, g2_rep;
    long g1_terms = 0, g2_terms = 0;
    double g1_est = 0.0, g2_est = 0.0;
    std::string error;
};

int cmd_table(const CommonOpts& o, const SweepOpts& s) {
    rdgreen::PhysicalParams base{o.alpha, o.beta, parse_zeta(o.zeta_str)};
    rdgreen::EvalPoint base_x = parse_point(o.x_str);
    rdgreen::RepChoice rep = parse_rep(o.rep_str);
    if (s.count < 0)
        throw rdgreen::Error("--count must be >= 0");

    std::vector<double> values(static_cast<size_t>(s.count));
    for (long i = 0; i < s.count; ++i)
        values[i] = s.count == 1 ? s.start
                                 : s.start + (s.stop - s.start) * static_cast<double>(i) /
                                       static_cast<double>(s.count - 1);

    auto compute = [&](double val) -> Row {
        Row row;
        row.value = val;
        rdgreen::PhysicalParams p = base;
        rdgreen::EvalPoint x = base_x;
        try {
            if (s.var == "r")
                x = rdgreen::make_point(0.0, 0.0, val);
            else if (s.var == "alpha")
                p.alpha = val;
            else if (s.var == "beta")
                p.beta = val;
            else // re(zeta)
                p.zeta = {val, base.zeta.imag()};
            rdgreen::validate_params(p);
            auto r1 = rdgreen::g1_detailed(x, p, rdgreen::EvalPath::Prefer_closed, rep, o.tol_rel,
                                           o.max_terms);
            auto r2 = rdgreen::g2_detailed(x, p, rdgreen::EvalPath::Prefer_closed, rep, o.tol_rel,
                                           o.max_terms);
            row.g1v = r1.value;
            row.g2v = r2.value;
            row.dpv = rdgreen::dpm_g1(x, p, +1);
            row.g1_rep = r1.representation;
            row.g2_rep = r2.representation;
            row.g1_terms = r1.terms_used;
            row.g2_terms = r2.terms_used;
            row.g1_est = r1.est_error;
            row.g2_est = r2.est_error;
            row.ok = true;
        } catch (const rdgreen::Error& e) {
            row.error = error_tag(e);
        }
        return row;
    };

    std::vector<Row> rows(values.size());
    int nthreads = std::max(1, std::min(s.threads, 64));
    if (nthreads == 1 || values.size() <= 1) {
        for (size_t i = 0; i < values.size(); ++i)
            rows[i] = compute(values[i]);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= values.size())
                    return;
                rows[i] = compute(values[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t)
            pool.emplace_back(worker);
        worker();
        for (auto& t : pool)
            t.join();
    }

    std::ostringstream out;
    if (o.format == "json") {
        ojson j;
        j["sweep"] = {{"variable", s.var}, {"start", jr(s.start)}, {"stop", jr(s.stop)},
                      {"count", s.count}};
        j["params"] = {{"alpha", jr(base.alpha)}, {"beta", jr(base.beta)}, {"zeta", jc(base.zeta)}};
        ojson jrows = ojson::array();
        for (const Row& r : rows) {
            ojson row;
            row["value"] = jr(r.value);
            if (r.ok) {
                row["g1"] = jc(r.g1v);
                row["g2"] = jc(r.g2v);
                row["dp_g1"] = jc(r.dpv);
                row["g1_rep"] = r.g1_rep;
                row["g2_rep"] = r.g2_rep;
                row["g1_terms"] = r.g1_terms;
                row["g2_terms"] = r.g2_terms;
                row["g1_est"] = jr(r.g1_est);
                row["g2_est"] = jr(r.g2_est);
                row["error"] = nullptr;
            } else {
                row["error"] = r.error;
            }
            jrows.push_back(row);
        }
        j["rows"] = jrows;
        out << j.dump(2) << "\n";
    } else {
        // text and csv share the tabular layout
        out << s.var
            << ",g1_re,g1_im,g2_re,g2_im,dpg1_re,dpg1_im,g1_rep,g2_rep,g1_terms,g2_terms,"
               "g1_est,g2_est,error\n";
        for (const Row& r : rows) {
            if (r.ok) {
                out << fmt_g(r.value) << ',' << fmt_g(r.g1v.real()) << ',' << fmt_g(r.g1v.imag())
                    << ',' << fmt_g(r.g2v.real()) << ',' << fmt_g(r.g2v.imag()) << ','
                    << fmt_g(r.dpv.real()) << ',' << fmt_g(r.dpv.imag()) << ','
                    << csv_field(r.g1_rep) << ',' << csv_field(r.g2_rep) << ',' << r.g1_terms
                    << ',' << r.g2_terms << ',' << fmt_g(r.g1_est) << ',' << fmt_g(r.g2_est)
                    << ",\n";
            } else {
                out << fmt_g(r.value) << ",,,,,,,,,,,,," << csv_field(r.error) << "\n";
            }
        }
    }
    emit(o, out.str());
    return 0;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    ComplexScalar got, ref;
    double rel = 0.0;
    bool pass = false;
};

int cmd_verify(const CommonOpts& o, double tol) {
    rdgreen::PhysicalParams p{o.alpha, o.beta, parse_zeta(o.zeta_str)};
    rdgreen::EvalPoint x = parse_point(o.x_str);
    rdgreen::validate_params(p); // invalid zeta exits before any computation
    if (x.r <= 0.0)
        throw rdgreen::Error("verify needs r > 0");

    std::vector<Check> checks;
    std::vector<std::string> skipped;
    auto add = [&](const std::string& name, ComplexScalar got, ComplexScalar ref) {
        double scale = std::max({std::abs(got), std::abs(ref), 1e-300});
        checks.push_back({name, got, ref, std::abs(got - ref) / scale, false});
        checks.back().pass = checks.back().rel <= tol;
    };

    ComplexScalar s1 = rdgreen::g1(x, p);
    ComplexScalar s2 = rdgreen::g2(x, p);
    ComplexScalar q1 = rdgreen::quad_g1(x.r, p);
    ComplexScalar q2 = rdgreen::quad_g2(x.r, p);
    add("g1 vs quadrature", s1, q1);
    add("g2 vs quadrature", s2, q2);

    if (p.beta >= rdgreen::kDegenerateEps &&
        rdgreen::macdonald_region_ok(rdgreen::macdonald_args(x.r, p))) {
        ComplexScalar m1 = rdgreen::macdonald_sum_g1(x.r, p);
        ComplexScalar m2 = rdgreen::macdonald_sum_g2(x.r, p);
        add("g1 vs macdonald sum", s1, m1);
        add("g2 vs macdonald sum", s2, m2);
        add("quadrature vs macdonald g1", q1, m1);
        add("quadrature vs macdonald g2", q2, m2);
    } else {
        skipped.push_back("macdonald sums (beta = 0 or outside every sum condition)");
    }

    bool a0 = p.alpha < rdgreen::kDegenerateEps, b0 = p.beta < rdgreen::kDegenerateEps;
    try {
        if (a0) {
            // closed exponential forms vs the series route
            add("g1 series vs closed form", rdgreen::g1(x, p, rdgreen::EvalPath::Force_series), s1);
            add("g2 series vs closed form", rdgreen::g2(x, p, rdgreen::EvalPath::Force_series), s2);
        } else {
            add("g1(0) series vs closed form",
                rdgreen::g1_at_origin(p, rdgreen::EvalPath::Force_series), rdgreen::g1_at_origin(p));
            add("g2_ren(0) series vs closed form",
                rdgreen::g2_ren_at_origin(p, rdgreen::EvalPath::Force_series),
                rdgreen::g2_ren_at_origin(p));
        }
    } catch (const rdgreen::NoValidRegion&) {
        skipped.push_back("closed-form cross-check (series region unavailable)");
    } catch (const rdgreen::OutOfRegion&) {
        skipped.push_back("closed-form cross-check (series region unavailable)");
    }
    (void)b0;

    double max_rel = 0.0;
    bool all_pass = true;
    for (const Check& c : checks) {
        max_rel = std::max(max_rel, c.rel);
        all_pass = all_pass && c.pass;
    }

    std::ostringstream out;
    if (o.format == "json") {
        ojson j;
        j["params"] = {{"alpha", jr(p.alpha)}, {"beta", jr(p.beta)}, {"zeta", jc(p.zeta)}};
        j["r"] = jr(x.r);
        j["tolerance"] = jr(tol);
        ojson arr = ojson::array();
        for (const Check& c : checks)
            arr.push_back({{"name", c.name}, {"got", jc(c.got)}, {"reference", jc(c.ref)},
                           {"rel_deviation", jr(c.rel)}, {"pass", c.pass}});
        j["checks"] = arr;
        j["skipped"] = skipped;
        j["max_rel_deviation"] = jr(max_rel);
        j["pass"] = all_pass;
        out << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        out << "name,got_re,got_im,ref_re,ref_im,rel_deviation,pass\n";
        for (const Check& c : checks)
            out << csv_field(c.name) << ',' << fmt_g(c.got.real()) << ',' << fmt_g(c.got.imag())
                << ',' << fmt_g(c.ref.real()) << ',' << fmt_g(c.ref.imag()) << ',' << fmt_g(c.rel)
                << ',' << (c.pass ? 1 : 0) << "\n";
    } else {
        for (const Check& c : checks) {
            char line[256];
            std::snprintf(line, sizeof line, "%-32s rel %.3e  %s\n", c.name.c_str(), c.rel,
                          c.pass ? "PASS" : "FAIL");
            out << line;
        }
        for (const std::string& s : skipped)
            out << "skipped: " << s << "\n";
        char tail[96];
        std::snprintf(tail, sizeof tail, "max relative deviation %.3e (tolerance %.3e)\n", max_rel,
                      tol);
        out << tail << (all_pass ? "PASS" : "FAIL") << "\n";
    }
    emit(o, out.str());
    return all_pass ? 0 : 5;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's function of the 3D Rashba-Dresselhaus Hamiltonian"};
    app.require_subcommand(1);

    CommonOpts eval_o, region_o, table_o, verify_o;
    SweepOpts sweep;
    double verify_tol = 1e-6;

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate G1, G2, D+-G1 and the 2x2 matrix at a point");
    add_common(eval_cmd, eval_o);

    CLI::App* region_cmd = app.add_subcommand("region", "diagnose spectrum edge, resolvent membership, and series regions");
    add_common(region_cmd, region_o, /*with_rep=*/false);

    CLI::App* table_cmd = app.add_subcommand("table", "sweep one variable and emit rows (csv or json)");
    table_o.format = "csv";
    add_common(table_cmd, table_o);
    table_cmd->add_option("--sweep", sweep.var, "swept variable")
        ->check(CLI::IsMember({"r", "alpha", "beta", "re(zeta)"}))
        ->required();
    table_cmd->add_option("--start", sweep.start, "first value")->required();
    table_cmd->add_option("--stop", sweep.stop, "last value")->required();
    table_cmd->add_option("--count", sweep.count, "number of rows")->required();
    table_cmd->add_option("--threads", sweep.threads, "parallel row evaluation (output order fixed)")
        ->capture_default_str();

    CLI::App* verify_cmd = app.add_subcommand("verify", "compare the series against the quadrature and Macdonald-sum oracles");
    add_common(verify_cmd, verify_o, /*with_rep=*/false);
    verify_cmd->add_option("--tol", verify_tol, "verification tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eval_cmd->parsed())
            return cmd_eval(eval_o);
        if (region_cmd->parsed())
            return cmd_region(region_o);
        if (table_cmd->parsed())
            return cmd_table(table_o, sweep);
        return cmd_verify(verify_o, verify_tol);
    } catch (const rdgreen::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
