#include "qglab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include "qglab/corep.hpp"
#include "qglab/duality.hpp"
#include "qglab/errors.hpp"
#include "qglab/free_fock.hpp"
#include "qglab/instance_io.hpp"

namespace qglab {

namespace {

using Clock = std::chrono::steady_clock;

struct Instance {
    std::string label;
    QG g;
    std::string json;
};

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double mat_dist(const Mat& a, const Mat& b) { return max_abs(Mat(a - b)); }

class Sink {
public:
    Sink(SuiteReport& rep, const SuiteConfig& cfg, std::string prefix, std::string digest)
        : rep_(rep), cfg_(cfg), prefix_(std::move(prefix)), digest_(std::move(digest)) {}

    double tol(double fallback) const { return cfg_.tol > 0.0 ? cfg_.tol : fallback; }

    void add(const std::string& name, const std::string& anchor, const std::string& rel, double value, double bound,
             double tol, double ms, const std::string& note = "") {
        Record r;
        r.name = prefix_ + "/" + name;
        r.anchor = anchor;
        r.digest = digest_;
        r.relation = rel;
        r.value = value;
        r.bound = bound;
        r.tol = tol;
        r.runtime_ms = ms;
        r.note = note;
        if (!std::isfinite(value))
            r.pass = false;
        else if (rel == "<=")
            r.pass = value <= bound + tol;
        else if (rel == ">=")
            r.pass = value >= bound - tol;
        else
            r.pass = true;
        rep_.records.push_back(std::move(r));
    }

    // Residual that must stay below tol.
    void residual(const std::string& name, const std::string& anchor, double value, double tol, double ms) {
        add(name, anchor, "<=", value, 0.0, tol, ms);
    }

    void error(const std::string& what, const std::string& msg) {
        add(what + "/error", "run completed without numerical failure", "<=", 1.0, 0.0, 0.0, 0.0, msg);
    }

private:
    SuiteReport& rep_;
    const SuiteConfig& cfg_;
    std::string prefix_;
    std::string digest_;
};

// Numerical failures inside one suite become failing records; structural ones propagate.
void guarded(Sink& sink, const std::string& what, const std::function<void()>& body) {
    try {
        body();
    } catch (const InvalidInstance& e) {
        sink.error(what, e.what());
    } catch (const NumericalDegeneracy& e) {
        sink.error(what, e.what());
    } catch (const NotInvertible& e) {
        sink.error(what, e.what());
    }
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Functional random_functional(const QG& g, Rng& rng) { return functional(g, rng.cvec(g->dim())); }

constexpr int kCorepDim = 2;

// Same law as random_invertible_corep without rebuilding the irreducibles each trial.
Corepresentation twist(const Corepresentation& v0, std::uint64_t seed, double max_cond = 10.0) {
    Rng rng(seed);
    return twisted_corep(v0, rng.conditioned(v0.d, max_cond));
}

void validate_suite(const Instance& in, const SuiteConfig& cfg, SuiteReport& rep) {
    Sink sink(rep, cfg, "validate/" + in.label, digest_hex(in.json + "|validate"));
    auto t0 = Clock::now();
    guarded(sink, "axioms", [&] {
        auto v = validate(*in.g, sink.tol(1e-10));
        double ms = elapsed_ms(t0);
        for (const auto& c : v.checks) sink.residual(c.name, "finite quantum group axioms", c.violation, v.tol, ms);
    });
}

void duality_suite(const Instance& in, const SuiteConfig& cfg, SuiteReport& rep) {
    Sink sink(rep, cfg, "duality/" + in.label,
              digest_hex(in.json + "|duality|" + std::to_string(cfg.seed) + "|" + std::to_string(cfg.trials)));
    Rng rng(mix_seed(cfg.seed, "duality/" + in.label));
    const auto& g = in.g;
    guarded(sink, "w", [&] {
        auto t0 = Clock::now();
        auto w = build_w(g);
        sink.residual("pentagon", "W12 W13 W23 = W23 W12", pentagon_residual(w.w, g->dim()), sink.tol(1e-9), elapsed_ms(t0));
        t0 = Clock::now();
        sink.residual("coproduct", "Delta(x) = W*(1 (x) x)W", coproduct_residual(g, w.w), sink.tol(1e-9), elapsed_ms(t0));

        t0 = Clock::now();
        double sharp_res = 0.0, hom_res = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            auto a = random_functional(g, rng), b = random_functional(g, rng);
            sharp_res = std::max(sharp_res, mat_dist(lambda_rep(w, sharp(a)), lambda_rep(w, a).adjoint()));
            hom_res = std::max(hom_res, mat_dist(lambda_rep(w, convolve(a, b)), lambda_rep(w, a) * lambda_rep(w, b)));
        }
        double ms = elapsed_ms(t0);
        sink.residual("lambda_sharp", "lambda(omega#) = lambda(omega)*", sharp_res, sink.tol(1e-10), ms);
        sink.residual("lambda_hom", "lambda is multiplicative on L1(G)", hom_res, sink.tol(1e-9), ms);
    });
    guarded(sink, "dual", [&] {
        auto t0 = Clock::now();
        auto dq = build_dual(g);
        auto dv = validate(*dq->dual, sink.tol(1e-9));
        sink.residual("dual_axioms", "the dual is a finite quantum group", dv.max_violation, dv.tol, elapsed_ms(t0));

        t0 = Clock::now();
        auto bd = biduality(g, sink.tol(1e-8));
        double ms = elapsed_ms(t0);
        sink.add("biduality", "the double dual is isomorphic to G", "<=", bd.violation, 0.0, sink.tol(1e-8), ms, bd.map);
        sink.add("biduality_blocks", "the double dual is isomorphic to G", "<=", bd.blocks_match ? 0.0 : 1.0, 0.0, 0.0, ms);

        t0 = Clock::now();
        double pair_res = 0.0;
        for (int t = 0; t < 2 * cfg.trials; ++t) {
            auto x = element(g, rng.cvec(g->dim()));
            auto w1 = random_functional(g, rng), w2 = random_functional(g, rng);
            pair_res = std::max(pair_res, pairing_identity_check(*dq, x, w1, w2));
        }
        sink.residual("pairing_identity", "Lambda(lambda-hat(omega-hat)) = Lambda-hat(lambda((x omega1) omega2))", pair_res,
                      sink.tol(1e-8), elapsed_ms(t0));
    });
}

double hom_residual(const Corepresentation& v) {
    const auto& g = v.owner;
    double worst = 0.0;
    for (int a = 0; a < g->dim(); ++a)
        for (int b = 0; b < g->dim(); ++b) {
            auto wa = basis_functional(g, a), wb = basis_functional(g, b);
            worst = std::max(worst, mat_dist(pi_of(v, convolve(wa, wb)), pi_of(v, wa) * pi_of(v, wb)));
        }
    return worst;
}

void corep_suite(const Instance& in, const SuiteConfig& cfg, SuiteReport& rep) {
    Sink sink(rep, cfg, "corep/" + in.label,
              digest_hex(in.json + "|corep|" + std::to_string(cfg.seed) + "|" + std::to_string(cfg.trials)));
    Rng rng(mix_seed(cfg.seed, "corep/" + in.label));
    const auto& g = in.g;
    const int d = kCorepDim;
    guarded(sink, "trials", [&] {
        auto t0 = Clock::now();
        double dichotomy = 0.0, gen = 0.0, anti = 0.0, inv = 0.0, inv_anti = 0.0, iso = 0.0;
        const auto v0 = unitary_corep(g, d);
        for (int t = 0; t < cfg.trials; ++t) {
            auto v = twist(v0, rng.next_seed());
            if (is_corep(v).is_corep != (hom_residual(v) <= 1e-8)) dichotomy += 1.0;
            Corepresentation junk = zero_corep(g, d);
            for (auto& e : junk.entries) e = rng.cvec(g->dim());
            if (is_corep(junk).is_corep != (hom_residual(junk) <= 1e-8)) dichotomy += 1.0;

            auto vt = generator_of(Variant::Tilde, v);
            auto vs = generator_of(Variant::Star, v);
            auto vc = generator_of(Variant::Check, v);
            auto w = random_functional(g, rng);
            gen = std::max({gen, corep_distance(vt, corep_adjoint(v)), corep_distance(vs, corep_adjoint(vc)),
                            mat_dist(pi_of(vt, w), pi_tilde(v, w)), mat_dist(pi_of(vs, w), pi_star(v, w)),
                            mat_dist(pi_of(vc, w), pi_check(v, w))});

            anti = std::max(anti, antipode_coeff_check(v, rng.cvec(d), rng.cvec(d)));

            auto chk = inverse_corep_checked(v);
            inv = std::max(inv, chk.two_sided_residual);
            inv_anti = std::max(inv_anti, chk.anti_corep_violation);

            Mat q = rng.unitary(d);
            auto u = scalar_sandwich(q, v0, q.adjoint());
            if (isometry_residual(u) <= 1e-10) iso = std::max(iso, coisometry_residual(u));
            else iso = std::max(iso, 1.0);
        }
        double ms = elapsed_ms(t0);
        sink.add("dichotomy", "pi is a homomorphism iff V is a corepresentation", "<=", dichotomy, 0.0, 0.0, ms);
        sink.residual("generators", "V_{pi~} = V*, V_{pi*} = V_{pi-check}*", gen, sink.tol(1e-9), ms);
        sink.residual("antipode_coefficient", "S(T^{pi*}_{a,b})* = T^pi_{b,a}", anti, sink.tol(1e-8), ms);
        sink.residual("inverse", "(S (x) id)V is a two-sided inverse of V", inv, sink.tol(1e-8), ms);
        sink.residual("inverse_anti_corep", "(S (x) id)V is an anti-corepresentation", inv_anti, sink.tol(1e-8), ms);
        sink.residual("isometry_unitary", "isometric corepresentations are unitary", iso, sink.tol(1e-10), ms);
    });
    guarded(sink, "degenerate", [&] {
        auto t0 = Clock::now();
        double idem = 0.0, comm = 0.0, dim_err = 0.0, qres = 0.0;
        const int runs = std::max(1, std::min(cfg.trials, 10));
        const auto u0 = unitary_corep(g, d);
        for (int t = 0; t < runs; ++t) {
            auto deg = direct_sum(twist(u0, rng.next_seed()), zero_corep(g, 1));
            Mat tw = rng.conditioned(d + 1, 5.0);
            auto twisted = scalar_sandwich(tw, deg, tw.inverse());
            for (const auto* v : {&deg, &twisted}) {
                auto e = essential_data(*v);
                idem = std::max(idem, e.idempotent_residual);
                comm = std::max(comm, e.commute_residual);
                dim_err = std::max(dim_err, std::abs(double(e.essential_dim - d)));
                qres = std::max(qres, e.q_residual);
            }
        }
        double ms = elapsed_ms(t0);
        sink.residual("degenerate_idempotent", "P = V (S (x) id)V is idempotent", idem, sink.tol(1e-8), ms);
        sink.residual("degenerate_commute", "V (S (x) id)V = (S (x) id)V V", comm, sink.tol(1e-8), ms);
        sink.add("degenerate_dimension", "Q recovers the essential part", "<=", dim_err, 0.0, 0.0, ms);
        sink.residual("degenerate_q", "pi(omega) Q = pi(omega)", qres, sink.tol(1e-10), ms);
    });
}

void unitarize_suite(const Instance& in, const SuiteConfig& cfg, SuiteReport& rep) {
    Sink sink(rep, cfg, "unitarize/" + in.label,
              digest_hex(in.json + "|unitarize|" + std::to_string(cfg.seed) + "|" + std::to_string(cfg.trials)));
    Rng rng(mix_seed(cfg.seed, "unitarize/" + in.label));
    const auto& g = in.g;
    guarded(sink, "trials", [&] {
        auto t0 = Clock::now();
        double uni = 0.0, cor = 0.0, star = 0.0, eps_gap = 1e300;
        const auto v0 = unitary_corep(g, kCorepDim);
        for (int t = 0; t < cfg.trials; ++t) {
            auto v = twist(v0, rng.next_seed(), 10.0);
            auto r = unitarize(v);
            uni = std::max({uni, isometry_residual(r.unitary), coisometry_residual(r.unitary)});
            cor = std::max(cor, is_corep(r.unitary).violation);
            auto w = random_functional(g, rng);
            star = std::max(star, mat_dist(pi_of(r.unitary, sharp(w)), pi_of(r.unitary, w).adjoint()));
            eps_gap = std::min(eps_gap, r.min_eig - r.epsilon);
        }
        double ms = elapsed_ms(t0);
        sink.residual("unitary", "V' = (1 (x) T^1/2) V (1 (x) T^-1/2) is unitary", uni, sink.tol(1e-8), ms);
        sink.residual("corep", "V' is a corepresentation", cor, sink.tol(1e-8), ms);
        sink.residual("star_property", "pi'(omega#) = pi'(omega)*", star, sink.tol(1e-8), ms);
        sink.add("epsilon_floor", "V*V >= epsilon 1", ">=", eps_gap, 0.0, sink.tol(1e-8), ms);
    });
}

void multiplier_suite(const Instance& in, const SuiteConfig& cfg, SuiteReport& rep) {
    Sink sink(rep, cfg, "multiplier/" + in.label,
              digest_hex(in.json + "|multiplier|" + std::to_string(cfg.seed) + "|" + std::to_string(cfg.trials)));
    Rng rng(mix_seed(cfg.seed, "multiplier/" + in.label));
    const auto& g = in.g;
    guarded(sink, "trials", [&] {
        auto t0 = Clock::now();
        auto dq = build_dual(g);
        double res = 0.0, wres = 0.0, fact = -1e300, lower = -1e300;
        const auto v0 = unitary_corep(g, kCorepDim);
        for (int t = 0; t < cfg.trials; ++t) {
            auto v = twist(v0, rng.next_seed());
            Vec alpha = rng.cvec(kCorepDim), beta = rng.cvec(kCorepDim);
            auto m = multiplier_from_coefficient(*dq, v, alpha, beta);
            res = std::max(res, m.residual);
            wres = std::max(wres, m.w_residual);
            fact = std::max(fact, m.norm_bound - m.cor_bound);
            lower = std::max(lower, m.lower_bound - m.norm_bound);
        }
        double ms = elapsed_ms(t0);
        sink.residual("left_multiplier", "lambda-hat(L omega-hat) = T^{pi~}_{a,b} lambda-hat(omega-hat)", res, sink.tol(1e-8), ms);
        sink.residual("w_hat_identity", "(L* (x) id)(W-hat) = (1 (x) x) W-hat", wres, sink.tol(1e-8), ms);
        sink.add("cb_bound", "||L||_cb <= ||pi||_cb ||pi*||_cb ||a|| ||b||", "<=", fact, 0.0, sink.tol(1e-6), ms);
        sink.add("norm_sandwich", "||x|| <= ||L||_cb", "<=", lower, 0.0, sink.tol(1e-8), ms);
    });
}

std::string fock_tag(const SuiteConfig& cfg) {
    return "N" + std::to_string(cfg.copies) + "_L" + std::to_string(cfg.length);
}

Mat z2_symmetry() {
    Vec c(2);
    c << 1.0, -1.0;
    return factor_element(builtin("c_z2"), c);
}

void khintchine_suite(const SuiteConfig& cfg, long cap, SuiteReport& rep) {
    const std::string tag = fock_tag(cfg);
    Sink sink(rep, cfg, "khintchine/" + tag,
              digest_hex("khintchine|" + tag + "|" + std::to_string(cfg.seed) + "|" + std::to_string(cap)));
    Rng rng(mix_seed(cfg.seed, "khintchine/" + tag));
    NormOptions opts;
    opts.seed = mix_seed(cfg.seed, "khintchine/lanczos");
    const int n = cfg.copies, len = cfg.length;
    const auto z2 = group_factor(builtin("c_z2"));
    guarded(sink, "fock", [&] {
        for (int pass = 0; pass < 2; ++pass) {
            const bool matrix = pass == 1;
            const int copies = matrix ? std::min(n, 6) : n;
            const std::string kind = matrix ? "m2" : "z2";
            auto t0 = Clock::now();
            FockSpace f(std::vector<FreeFactor>(copies, matrix ? matrix_factor(2) : z2), len, cap);
            std::vector<KhintchineTerm> terms;
            for (int i = 0; i < copies; ++i) {
                Mat x;
                if (matrix) {
                    Mat a = rng.cmat(2, 2);
                    a -= a.trace() / 2.0 * Mat::Identity(2, 2);
                    x = matrix_element(a);
                } else {
                    x = rng.cnormal() * z2_symmetry();
                }
                terms.push_back({i, rng.cmat(2, 2), x});
            }
            auto kr = khintchine_check(f, terms, opts);
            double ms = elapsed_ms(t0);
            const std::string anchor = "||sum a_i (x) x_i|| <= 3 max{...}";
            sink.add(kind + "/upper", anchor, "<=", kr.lhs_cert, 3.0 * kr.rhs_max, sink.tol(1e-8), ms);
            sink.add(kind + "/ratio", anchor, "info", kr.ratio, 3.0, 0.0, ms);
            sink.add(kind + "/lower_slack", anchor, "info", kr.slack, 0.0, 0.0, ms);
        }

        // Column of free symmetries: x*x = N (x) e_00.
        auto t0 = Clock::now();
        FockSpace f(std::vector<FreeFactor>(n, z2), len, cap);
        std::vector<FreeOperator> u;
        for (int i = 0; i < n; ++i) u.push_back(free_action(f, i, z2_symmetry()));
        AmplifiedOperator col;
        col.k = n + 1;
        for (int i = 0; i < n; ++i) {
            Mat a = Mat::Zero(n + 1, n + 1);
            a(i + 1, 0) = 1.0;
            col.add(a, u[i].op);
        }
        double cn = compression_norm(f, col, len - 1, opts).value;
        const double root = std::sqrt(double(n));
        sink.residual("column_norm", "||sum u_i (x) e_i0|| = sqrt(N)", std::abs(cn - root), sink.tol(1e-10) * root,
                      elapsed_ms(t0));

        // Monotone compressions of sum u_i.
        t0 = Clock::now();
        AmplifiedOperator sum;
        for (const auto& op : u) sum.add(Mat::Ones(1, 1), op.op);
        auto seq = compression_norm_sequence(f, sum, len - 1, opts);
        double drop = 0.0;
        for (size_t i = 1; i < seq.size(); ++i) drop = std::max(drop, seq[i - 1] - seq[i]);
        double ms = elapsed_ms(t0);
        sink.residual("monotone", "compressions grow with the domain", drop, 1e-12, ms);
        sink.add("sum_norm", "||sum u_i|| <= 2 sqrt(N - 1)", "info", seq.back(), 2.0 * std::sqrt(std::max(0.0, n - 1.0)), 0.0,
                 ms);

        // Vacuum freeness on alternating centred words in M2 factors, and the exact-zone homomorphism.
        t0 = Clock::now();
        const int mf = std::max(2, std::min(n, 3));
        FockSpace fm(std::vector<FreeFactor>(mf, matrix_factor(2)), len, cap);
        double freeness = 0.0, hom = 0.0;
        const int exact = fm.count_up_to(len - 1);
        for (int t = 0; t < std::max(1, cfg.trials / 5); ++t) {
            std::vector<FreeOperator> word;
            for (int j = 0; j < len; ++j) {
                Mat a = rng.cmat(2, 2);
                a -= a.trace() / 2.0 * Mat::Identity(2, 2);
                word.push_back(free_action(fm, j % mf, matrix_element(a)));
            }
            std::vector<const FreeOperator*> ptrs;
            for (const auto& w : word) ptrs.push_back(&w);
            freeness = std::max(freeness, std::abs(vacuum_state(fm, ptrs).value));

            Mat a = rng.cmat(2, 2), b = rng.cmat(2, 2);
            auto oa = free_action(fm, 0, matrix_element(a)), ob = free_action(fm, 0, matrix_element(b));
            auto oab = free_action(fm, 0, matrix_element(Mat(a * b)));
            Mat diff = Mat(SpMat(oab.op - oa.op * ob.op)).leftCols(exact);
            hom = std::max(hom, max_abs(diff));
        }
        ms = elapsed_ms(t0);
        sink.residual("vacuum_freeness", "alternating centred words have zero vacuum expectation", freeness,
                      sink.tol(1e-10), ms);
        sink.residual("exact_zone_hom", "pi_i(ab) = pi_i(a) pi_i(b) on the exact zone", hom, sink.tol(1e-10), ms);
    });
}

void noncb_suite(const SuiteConfig& cfg, long cap, SuiteReport& rep) {
    const std::string tag = fock_tag(cfg);
    Sink sink(rep, cfg, "noncb/" + tag,
              digest_hex("noncb|" + tag + "|" + std::to_string(cfg.seed) + "|" + std::to_string(cap)));
    Rng rng(mix_seed(cfg.seed, "noncb/" + tag));
    NormOptions opts;
    opts.seed = mix_seed(cfg.seed, "noncb/lanczos");
    const int n = cfg.copies;
    guarded(sink, "probe", [&] {
        auto t0 = Clock::now();
        auto nrep = build_noncb_rep(n, cfg.length, cap);
        const auto& f = *nrep.fock;
        double mult = 0.0;
        for (int t = 0; t < 5; ++t) {
            Vec z1 = rng.cvec(f.dim()), e1 = rng.cvec(f.dim()), z2 = rng.cvec(f.dim()), e2 = rng.cvec(f.dim());
            Vec p1 = phi_map(nrep, z1, e1), p2 = phi_map(nrep, z2, e2);
            double scale = 1.0 + p1.norm() * p2.norm();
            mult = std::max(mult, mat_dist(theta_map(p1.cwiseProduct(p2)), pi_rep(nrep, z1, e1) * pi_rep(nrep, z2, e2)) / scale);
        }
        sink.residual("pi_multiplicative", "pi(omega1 omega2) = pi(omega1) pi(omega2)", mult, sink.tol(1e-9),
                      elapsed_ms(t0));

        t0 = Clock::now();
        auto probe = cb_vs_bounded_probe(nrep, 4, mix_seed(cfg.seed, "noncb/search"), opts);
        double ms = elapsed_ms(t0);
        const std::string anchor = "pi is bounded but not completely bounded";
        sink.add("cb_lower", anchor, ">=", probe.cb_lower, probe.analytic_floor, sink.tol(1e-6), ms);
        sink.add("bounded_upper", anchor, "info", probe.bounded_upper, 6.0, 0.0, ms);
        sink.add("pi_search", anchor, "<=", probe.pi_search, probe.bounded_upper, sink.tol(1e-6), ms);
        sink.add("multiplier_norm", "the coefficient does not induce a bounded left multiplier", "info",
                 probe.multiplier_norm, std::sqrt(double(n)), 0.0, ms);
        sink.add("phi_star_lower", "phi* is bounded below", "info", probe.phi_star_lower, 1.0, 0.0, ms);
    });
}

std::vector<Instance> load_instances(const SuiteConfig& cfg) {
    std::vector<Instance> out;
    std::vector<std::string> names = cfg.builtins;
    if (cfg.instances.empty() && names.empty()) names = builtin_names();
    for (const auto& name : names) {
        auto g = builtin(name);
        out.push_back({name, g, instance_to_json(g->data()).dump()});
    }
    for (const auto& path : cfg.instances) {
        auto g = load_instance(path);
        out.push_back({g->name(), g, instance_to_json(g->data()).dump()});
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"validate", "duality", "corep", "multiplier", "unitarize", "khintchine", "noncb", "all"};
}

void check_config(const SuiteConfig& cfg) {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw StructuralError("unknown suite '" + cfg.suite + "'");
    if (cfg.trials < 1 || cfg.copies < 1 || cfg.length < 1) throw StructuralError("trials, copies and length must be positive");
    if (cfg.tol < 0.0 || cfg.dim_cap < 0) throw StructuralError("tolerance and dimension cap must be positive");
    if (cfg.format != "json" && cfg.format != "md") throw StructuralError("unknown format '" + cfg.format + "'");
}

bool SuiteReport::pass() const {
    return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

const Record* SuiteReport::find(const std::string& name) const {
    for (const auto& r : records)
        if (r.name == name) return &r;
    return nullptr;
}

void SuiteReport::sort() {
    std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) { return a.name < b.name; });
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    check_config(cfg);
    SuiteReport rep;
    const long cap = cfg.dim_cap > 0 ? cfg.dim_cap : default_dim_cap();
    auto& c = rep.config;
    c["suite"] = cfg.suite;
    c["seed"] = cfg.seed;
    c["trials"] = cfg.trials;
    c["copies"] = cfg.copies;
    c["length"] = cfg.length;
    c["dim_cap"] = cap;
    if (cfg.tol > 0.0) c["tol"] = cfg.tol;

    const bool all = cfg.suite == "all";
    auto want = [&](const char* s) { return all || cfg.suite == s; };
    const bool needs_instances =
        want("validate") || want("duality") || want("corep") || want("multiplier") || want("unitarize");
    if (needs_instances) {
        auto instances = load_instances(cfg);
        nlohmann::ordered_json labels = nlohmann::ordered_json::array();
        for (const auto& in : instances) labels.push_back(in.label);
        c["instances"] = labels;
        for (const auto& in : instances) {
            if (want("validate")) validate_suite(in, cfg, rep);
            if (want("duality")) duality_suite(in, cfg, rep);
            if (want("corep")) corep_suite(in, cfg, rep);
            if (want("unitarize")) unitarize_suite(in, cfg, rep);
            if (want("multiplier")) multiplier_suite(in, cfg, rep);
        }
    }
    if (want("khintchine")) khintchine_suite(cfg, cap, rep);
    if (want("noncb")) noncb_suite(cfg, cap, rep);
    rep.sort();
    return rep;
}

nlohmann::ordered_json report_to_json(const SuiteReport& report, bool with_runtime) {
    nlohmann::ordered_json j;
    if (!report.config.empty()) j["config"] = report.config;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["anchor"] = r.anchor;
        e["digest"] = r.digest;
        e["relation"] = r.relation;
        e["value"] = r.value;
        e["bound"] = r.bound;
        e["tol"] = r.tol;
        e["pass"] = r.pass;
        if (!r.note.empty()) e["note"] = r.note;
        if (with_runtime) e["runtime_ms"] = r.runtime_ms;
        j["records"].push_back(e);
    }
    j["pass"] = report.pass();
    return j;
}

std::string emit_report(const SuiteReport& report, const std::string& format, bool with_runtime) {
    if (format == "json") return report_to_json(report, with_runtime).dump(2) + "\n";
    if (format != "md") throw StructuralError("unknown format '" + format + "'");
    std::ostringstream os;
    os << "| check | relation | value | bound | tol | status |";
    if (with_runtime) os << " ms |";
    os << "\n|---|---|---|---|---|---|";
    if (with_runtime) os << "---|";
    os << "\n";
    for (const auto& r : report.records) {
        os << "| " << r.name << " | " << r.relation << " | " << fmt(r.value) << " | " << fmt(r.bound) << " | "
           << fmt(r.tol) << " | " << (r.pass ? "pass" : "FAIL") << " |";
        if (with_runtime) os << " " << std::lround(r.runtime_ms) << " |";
        os << "\n";
    }
    os << "\n" << (report.pass() ? "PASS" : "FAIL") << ": " << report.records.size() << " checks\n";
    return os.str();
}

std::string digest_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string> export_corpus(const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> out;
    for (const auto& name : builtin_names()) {
        auto path = (std::filesystem::path(dir) / (name + ".json")).string();
        save_instance(builtin(name)->data(), path);
        out.push_back(path);
    }
    return out;
}

}  // namespace qglab
