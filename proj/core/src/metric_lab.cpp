#include "apfrac/metric_lab.hpp"

#include "apfrac/functions.hpp"
#include "apfrac/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace apfrac {

namespace {

constexpr long kPsiBits = 96;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Runs one() for sample indices 0..samples-1, chunked across threads.
/// Results land in index order, so the schedule cannot change the report.
template <typename R, typename F>
std::vector<R> run_samples(long samples, long threads, F&& one) {
    if (threads < 1) threads = 1;
    auto ranges = split_range(0, samples - 1, threads == 1 ? 1 : threads * 2);
    auto parts = parallel_chunks(ranges.size(), static_cast<unsigned>(threads),
                                 [&](std::size_t ci) -> std::vector<R> {
                                     const long lo = static_cast<long>(ranges[ci].first);
                                     const long hi = static_cast<long>(ranges[ci].second);
                                     std::vector<R> out;
                                     out.reserve(static_cast<std::size_t>(hi - lo + 1));
                                     for (long i = lo; i <= hi; ++i) out.push_back(one(i));
                                     return out;
                                 });
    std::vector<R> all;
    all.reserve(static_cast<std::size_t>(samples));
    for (auto& part : parts) {
        for (auto& r : part) all.push_back(std::move(r));
    }
    return all;
}

void tally(TrialReport& rep) {
    rep.hits = rep.misses = rep.undecided = 0;
    for (int v : rep.outcomes) {
        if (v == 1) ++rep.hits;
        else if (v == 0) ++rep.misses;
        else ++rep.undecided;
    }
    rep.fraction = make_rat(Int(rep.hits), Int(rep.sample_count));
    double f = rep.fraction.get_d();
    rep.std_error = std::sqrt(f * (1.0 - f) / static_cast<double>(rep.sample_count));
}

std::string constraint_text(const Constraint& c) {
    return "(" + to_string(c.a) + "," + to_string(c.b) + "," + to_string(c.r) + "," +
           to_string(c.s) + ")";
}

/// Enclosure of min over the progression aZ+r of |xiN - y|.  Valid whenever
/// the width of xiN is below a/2, which the callers guarantee by the choice
/// of base precision.
Enclosure progression_gap(const Enclosure& xiN, const Int& a, const Int& r) {
    Rat mid = (xiN.lo() + xiN.hi()) / 2;
    Int y0 = nearest_in_progression(mid, a, r);
    Rat best_lo(-1), best_hi(-1);
    for (int step : {-1, 0, 1}) {
        Enclosure d = (xiN - Rat(y0 + step * a)).abs();
        if (sgn(best_lo) < 0 || d.lo() < best_lo) best_lo = d.lo();
        if (sgn(best_hi) < 0 || d.hi() < best_hi) best_hi = d.hi();
    }
    return Enclosure(best_lo, best_hi);
}

}  // namespace

std::string GaussMeasure::expression() const {
    return "log(" + to_string(odds) + ")/log(2)";
}

GaussMeasure gauss_measure(const Rat& lo, const Rat& hi, long bits) {
    if (sgn(lo) < 0 || lo > hi || hi > 1) {
        throw PreconditionError("gauss_measure needs 0 <= lo <= hi <= 1");
    }
    GaussMeasure out;
    out.odds = (Rat(1) + hi) / (Rat(1) + lo);
    out.value = log_enclosure(out.odds, bits) / ln2_enclosure(bits);
    return out;
}

SampledReal::SampledReal(unsigned long seed, long index, const Rat& lo, const Rat& hi,
                         const Tolerances& tol)
    : lo_(lo), span_(hi - lo), tol_(tol) {
    if (!(lo < hi)) throw PreconditionError("sample interval is empty");
    if (index < 0) throw PreconditionError("sample index cannot be negative");
    const auto u = static_cast<unsigned long>(index);
    std::seed_seq sq{static_cast<std::uint32_t>(seed & 0xffffffffUL),
                     static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(u & 0xffffffffUL),
                     static_cast<std::uint32_t>(u >> 32)};
    rng_.seed(sq);
    ps_ = {Int(0), Int(1)};
    qs_ = {Int(1), Int(0)};
}

void SampledReal::extend() {
    num_ = num_ * pow_int(Int(2), 64) + Int(static_cast<unsigned long>(rng_()));
    tbits_ += 64;
}

Enclosure SampledReal::enclose_bits(long bits) {
    if (bits < 1) bits = 1;
    while (span_ * Rat(pow_int(Int(2), static_cast<unsigned long>(bits))) >
           Rat(pow_int(Int(2), static_cast<unsigned long>(tbits_)))) {
        extend();
    }
    const Int den = pow_int(Int(2), static_cast<unsigned long>(tbits_));
    return Enclosure(lo_ + span_ * make_rat(num_, den), lo_ + span_ * make_rat(num_ + 1, den));
}

bool SampledReal::try_digit() {
    const long k = static_cast<long>(digits_.size());
    const Int den = pow_int(Int(2), static_cast<unsigned long>(tbits_));
    const Rat ends[2] = {lo_ + span_ * make_rat(num_, den),
                         lo_ + span_ * make_rat(num_ + 1, den)};
    // tail after k digits: t = (p_{k-2} - xi q_{k-2}) / (xi q_{k-1} - p_{k-1});
    // the seeds (0,1)/(1,0) make the same formula give t = xi at k = 0
    Rat t[2];
    int dsign = 0;
    for (int idx : {0, 1}) {
        Rat dd = ends[idx] * Rat(qs_[k + 1]) - Rat(ps_[k + 1]);
        if (sgn(dd) == 0 || (dsign != 0 && sgn(dd) != dsign)) return false;
        dsign = sgn(dd);
        t[idx] = (Rat(ps_[k]) - ends[idx] * Rat(qs_[k])) / dd;
    }
    const Rat tlo = rat_min(t[0], t[1]);
    const Rat thi = rat_max(t[0], t[1]);
    // open-interval floors: an integer upper endpoint is never attained
    const Int alo = floor_rat(tlo);
    const Int ahi = thi.get_den() == 1 ? Int(thi.get_num() - 1) : floor_rat(thi);
    if (alo != ahi) return false;
    if (k >= 1 && alo < 1) return false;
    digits_.push_back(alo);
    ps_.push_back(alo * ps_[k + 1] + ps_[k]);
    qs_.push_back(alo * qs_[k + 1] + qs_[k]);
    return true;
}

const Int& SampledReal::digit(long k) {
    if (k < 0) throw PreconditionError("digit index cannot be negative");
    while (static_cast<long>(digits_.size()) <= k) {
        if (!try_digit()) {
            if (tbits_ >= tol_.cap_bits) {
                throw PrecisionCapError("sample digit pinned to a dyadic boundary at the cap");
            }
            extend();
        }
    }
    return digits_[static_cast<std::size_t>(k)];
}

const Int& SampledReal::denominator(long k) {
    if (k < -1) throw PreconditionError("denominator index starts at -1");
    if (k >= 0) digit(k);
    return qs_[static_cast<std::size_t>(k + 2)];
}

RealSpec sample_real(unsigned long seed, long index, const Rat& lo, const Rat& hi,
                     long digits, const Tolerances& tol) {
    if (digits < 1) throw PreconditionError("a digit prefix needs at least one digit");
    SampledReal sr(seed, index, lo, hi, tol);
    Int a0 = sr.digit(0);
    std::vector<Int> rest;
    rest.reserve(static_cast<std::size_t>(digits));
    for (long k = 1; k <= digits; ++k) rest.push_back(sr.digit(k));
    return RealSpec::digit_stream(a0, std::move(rest));
}

Int PhiSeq::at(long k) const {
    if (k < 1) throw PreconditionError("threshold index starts at 1");
    Rat v = scale * Rat(pow_int(Int(k), static_cast<unsigned long>(power)));
    Int f = floor_rat(v);
    return f < 1 ? Int(1) : f;
}

PhiSeq PhiSeq::parse(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) {
        throw PreconditionError("threshold spec needs two components scale,power: '" + text + "'");
    }
    PhiSeq out;
    out.scale = parse_rat(parts[0]);
    Int p = parse_int(parts[1]);
    if (sgn(out.scale) <= 0) throw PreconditionError("threshold scale must be positive");
    if (sgn(p) < 0 || !fits_long(p)) throw PreconditionError("threshold power out of range");
    out.power = to_long(p);
    return out;
}

std::string PhiSeq::to_string() const {
    return apfrac::to_string(scale) + "," + std::to_string(power);
}

void BBTrialSpec::validate() const {
    if (A < 1) throw PreconditionError("digit cap must be at least 1");
    if (d < 0) throw PreconditionError("block length cannot be negative");
    if (sgn(phi.scale) <= 0) throw PreconditionError("threshold scale must be positive");
    if (lemma_rule()) {
        if (d != 2) throw PreconditionError("the vanishing-block rule prescribes two digits");
        if (A != target_modulus) {
            throw PreconditionError("the vanishing-block rule needs A equal to the modulus");
        }
        if (!fixed_block.empty()) throw PreconditionError("choose a single block rule");
    } else if (d == 0) {
        if (!fixed_block.empty()) throw PreconditionError("a zero-length block takes no digits");
        if (c < 1) throw PreconditionError("spacing must be positive");
    } else {
        if (static_cast<long>(fixed_block.size()) != d) {
            throw PreconditionError("block rule size must match the block length");
        }
        for (const Int& v : fixed_block) {
            if (v < 1 || v > A) throw PreconditionError("block digits must lie in [1, A]");
        }
    }
    if (d > 0 && c < d + 1) throw PreconditionError("spacing must exceed the block length");
}

std::string BBTrialSpec::to_string() const {
    std::string rule;
    if (lemma_rule()) {
        rule = "rule=vanish mod " + apfrac::to_string(target_modulus);
    } else if (d == 0) {
        rule = "rule=none";
    } else {
        rule = "block=[";
        for (std::size_t i = 0; i < fixed_block.size(); ++i) {
            if (i) rule += ",";
            rule += apfrac::to_string(fixed_block[i]);
        }
        rule += "]";
    }
    return "A=" + apfrac::to_string(A) + " d=" + std::to_string(d) + " c=" + std::to_string(c) +
           " phi=" + phi.to_string() + " " + rule;
}

TrialReport khintchine_block_trial(const Constraint& c, const PsiSpec& psi, const Int& block_lo,
                                   const Int& block_hi, long samples, unsigned long seed,
                                   bool require_gcd, long threads, const Tolerances& tol) {
    if (block_lo < 1 || block_lo >= block_hi) {
        throw PreconditionError("the denominator block needs 1 <= lo < hi");
    }
    if (!psi.psi_nonincreasing()) throw PreconditionError("psi must be nonincreasing");
    if (samples < 1) throw PreconditionError("at least one sample is needed");

    const Int n_first = sgn(c.s) > 0 ? Int(0) : Int(1);
    // admissible denominators inside the block
    std::vector<Int> ns;
    std::vector<Rat> rat_ns;
    std::vector<Enclosure> thr0;
    {
        Int n = floor_div(block_lo - c.s + c.b - 1, c.b);
        if (n < n_first) n = n_first;
        for (Int N = c.b * n + c.s; N <= block_hi; N += c.b) {
            ns.push_back(N);
            rat_ns.push_back(Rat(N));
            thr0.push_back(psi.psi(Rat(N), kPsiBits) * Rat(N));
        }
    }
    const Int gcd4 = gcd(gcd(c.a, c.b), gcd(c.r, c.s));
    const long base_bits =
        kPsiBits + static_cast<long>(mpz_sizeinbase(block_hi.get_mpz_t(), 2));

    auto one = [&](long i) -> int {
        SampledReal sr(seed, i, Rat(0), Rat(1), tol);
        Enclosure xi = sr.enclose_bits(base_bits);
        bool fog = false;
        for (std::size_t t = 0; t < ns.size(); ++t) {
            const Int& N = ns[t];
            Enclosure xiN = xi * rat_ns[t];
            const Enclosure& thr = thr0[t];
            const Rat wlo = xiN.lo() - thr.hi();
            const Rat whi = xiN.hi() + thr.hi();
            const Rat mid = (xiN.lo() + xiN.hi()) / 2;
            const Int y0 = nearest_in_progression(mid, c.a, c.r);
            for (long step = 0;; ++step) {
                bool inside = false;
                for (int dir : {1, -1}) {
                    if (step == 0 && dir < 0) continue;
                    const Int y = y0 + Int(dir * step) * c.a;
                    const Rat ry(y);
                    if (ry < wlo || ry > whi) continue;
                    inside = true;
                    if (require_gcd && gcd(y, N) != gcd4) continue;
                    Enclosure dist = (xiN - ry).abs();
                    std::optional<bool> hit;
                    if (dist.hi() < thr.lo()) hit = true;
                    else if (dist.lo() >= thr.hi()) hit = false;
                    for (long bits = base_bits * 2; !hit; bits *= 2) {
                        if (bits > tol.cap_bits) break;
                        Enclosure xr = sr.enclose_bits(bits) * rat_ns[t];
                        Enclosure dr = (xr - ry).abs();
                        Enclosure tr = psi.psi(rat_ns[t], bits) * rat_ns[t];
                        if (dr.hi() < tr.lo()) hit = true;
                        else if (dr.lo() >= tr.hi()) hit = false;
                    }
                    if (!hit) fog = true;
                    else if (*hit) return 1;
                }
                if (!inside && step > 0) break;
            }
        }
        return fog ? 2 : 0;
    };

    TrialReport rep;
    rep.experiment = "khintchine-block";
    rep.seed = seed;
    rep.sample_count = samples;
    rep.params = "c=" + constraint_text(c) + " psi=" + psi.to_string() + " block=[" +
                 to_string(block_lo) + "," + to_string(block_hi) + "]" +
                 (require_gcd ? " gcd=required" : " gcd=free");
    rep.outcomes = run_samples<int>(samples, threads, one);
    tally(rep);
    // the series segment sum over n >= 1 with bn+s inside the block
    Enclosure acc;
    Int n = floor_div(block_lo - c.s + c.b - 1, c.b);
    if (n < 1) n = 1;
    for (; c.b * n + c.s <= block_hi; ++n) {
        acc = acc + psi.psi(Rat(c.b * n + c.s), kPsiBits) * Rat(n);
    }
    rep.block_sum = acc;
    return rep;
}

TrialReport uniform_survival(const Constraint& c, const PsiSpec& psi, long samples,
                             const std::vector<Int>& q_grid, unsigned long seed, long threads,
                             const Tolerances& tol) {
    if (!psi.psi_nonincreasing()) throw PreconditionError("psi must be nonincreasing");
    if (!psi.tilde_nondecreasing()) throw PreconditionError("Q psi(Q) must be nondecreasing");
    if (samples < 1) throw PreconditionError("at least one sample is needed");
    if (q_grid.empty()) throw PreconditionError("the grid cannot be empty");
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        if (q_grid[i] < 1 || (i > 0 && q_grid[i] <= q_grid[i - 1])) {
            throw PreconditionError("the grid must be positive and strictly increasing");
        }
    }
    if (!fits_long(q_grid.back())) throw PreconditionError("grid end out of range");

    const long qmax = to_long(q_grid.back());
    const long bstep = to_long(c.b);
    const long nfirst = to_long(sgn(c.s) > 0 ? c.s : c.b);
    const long qstart = nfirst;
    const long base_bits = kPsiBits + static_cast<long>(mpz_sizeinbase(Int(qmax).get_mpz_t(), 2));

    // psi is sample-independent: one enclosure per Q
    std::vector<Enclosure> psi0;
    psi0.reserve(static_cast<std::size_t>(qmax - qstart + 1));
    for (long Q = qstart; Q <= qmax; ++Q) psi0.push_back(psi.psi(Rat(Q), kPsiBits));

    struct Verdict {
        long fail_at = 0;   // 0 = never failed
        long undec_at = 0;  // 0 = always decided
    };

    auto one = [&](long i) -> Verdict {
        SampledReal sr(seed, i, Rat(0), Rat(1), tol);
        Enclosure xi = sr.enclose_bits(base_bits);
        Verdict v;
        Rat run_lo(-1), run_hi(-1);
        long next_n = nfirst;
        for (long Q = qstart; Q <= qmax; ++Q) {
            while (next_n <= Q) {
                Enclosure d = progression_gap(xi * Rat(next_n), c.a, c.r);
                if (sgn(run_lo) < 0 || d.lo() < run_lo) run_lo = d.lo();
                if (sgn(run_hi) < 0 || d.hi() < run_hi) run_hi = d.hi();
                next_n += bstep;
            }
            const Enclosure& pe = psi0[static_cast<std::size_t>(Q - qstart)];
            if (run_hi <= pe.lo()) continue;
            if (run_lo > pe.hi()) {
                v.fail_at = Q;
                break;
            }
            bool decided = false;
            for (long bits = base_bits * 2; bits <= tol.cap_bits; bits *= 2) {
                Enclosure xr = sr.enclose_bits(bits);
                Rat lo2(-1), hi2(-1);
                for (long N = nfirst; N <= Q; N += bstep) {
                    Enclosure d = progression_gap(xr * Rat(N), c.a, c.r);
                    if (sgn(lo2) < 0 || d.lo() < lo2) lo2 = d.lo();
                    if (sgn(hi2) < 0 || d.hi() < hi2) hi2 = d.hi();
                }
                Enclosure pr = psi.psi(Rat(Q), bits);
                if (hi2 <= pr.lo()) {
                    decided = true;
                    break;
                }
                if (lo2 > pr.hi()) {
                    decided = true;
                    v.fail_at = Q;
                    break;
                }
            }
            if (v.fail_at) break;
            if (!decided) {
                v.undec_at = Q;
                break;
            }
        }
        return v;
    };

    TrialReport rep;
    rep.experiment = "uniform-survival";
    rep.seed = seed;
    rep.sample_count = samples;
    rep.params = "c=" + constraint_text(c) + " psi=" + psi.to_string() + " grid_end=" +
                 to_string(q_grid.back());
    auto verdicts = run_samples<Verdict>(samples, threads, one);

    rep.curve.reserve(q_grid.size());
    for (const Int& g : q_grid) {
        SurvivalPoint pt;
        pt.Q = g;
        const long gq = to_long(g);
        for (const Verdict& v : verdicts) {
            if (v.undec_at != 0 && v.undec_at <= gq) ++pt.undecided;
            else if (v.fail_at == 0 || v.fail_at > gq) ++pt.survivors;
        }
        pt.fraction = make_rat(Int(pt.survivors), Int(samples));
        rep.curve.push_back(std::move(pt));
    }
    rep.outcomes.reserve(static_cast<std::size_t>(samples));
    const long last = qmax;
    for (const Verdict& v : verdicts) {
        if (v.undec_at != 0 && v.undec_at <= last) rep.outcomes.push_back(2);
        else if (v.fail_at == 0 || v.fail_at > last) rep.outcomes.push_back(1);
        else rep.outcomes.push_back(0);
    }
    tally(rep);
    return rep;
}

TrialReport borel_bernstein_trial(const BBTrialSpec& spec, long samples, long k_lo, long k_hi,
                                  unsigned long seed, long threads, const Tolerances& tol) {
    spec.validate();
    if (samples < 1) throw PreconditionError("at least one sample is needed");
    if (k_lo < 1 || k_lo > k_hi) throw PreconditionError("the index range needs 1 <= lo <= hi");

    auto one = [&](long i) -> int {
        SampledReal sr(seed, i, Rat(0), Rat(1), tol);
        try {
            for (long k = k_lo; k <= k_hi; ++k) {
                const long j = spec.c * k;
                bool match = true;
                if (spec.d > 0) {
                    std::vector<Int> blk;
                    if (spec.lemma_rule()) {
                        const Int alpha = mod_floor(sr.denominator(j - 2), spec.target_modulus);
                        const Int beta = mod_floor(sr.denominator(j - 1), spec.target_modulus);
                        auto pair = annihilating_pair(alpha, beta, spec.target_modulus);
                        blk = {pair.first, pair.second};
                    } else {
                        blk = spec.fixed_block;
                    }
                    for (long t = 0; t < spec.d && match; ++t) {
                        match = sr.digit(j + t) == blk[static_cast<std::size_t>(t)];
                    }
                }
                if (match && sr.digit(j + spec.d) >= spec.phi.at(j)) return 1;
            }
            return 0;
        } catch (const PrecisionCapError&) {
            return 2;
        }
    };

    TrialReport rep;
    rep.experiment = "borel-bernstein";
    rep.seed = seed;
    rep.sample_count = samples;
    rep.params = spec.to_string() + " k=[" + std::to_string(k_lo) + "," + std::to_string(k_hi) + "]";
    rep.outcomes = run_samples<int>(samples, threads, one);
    tally(rep);
    rep.divergent_floor =
        ln2_enclosure(kPsiBits) /
        Rat(Int(64) * pow_int(2 * spec.A, static_cast<unsigned long>(4 * spec.d)));
    Rat tail(0);
    for (long k = k_lo; k <= k_hi; ++k) tail += make_rat(Int(1), spec.phi.at(spec.c * k));
    rep.convergent_tail = tail * 2;
    return rep;
}

}  // namespace apfrac
