#include "cdc/metrics.hpp"

#include <algorithm>
#include <sstream>

namespace cdc {

namespace {

Rational demanded_fraction(const CdcScheme& s) {
    // s * (1 - M/N): demanded bits over Q*N*T.
    return Rational(s.params.reduce_replication) *
           Rational(s.params.files - s.params.files_per_worker, s.params.files);
}

}  // namespace

Rational communication_load(const ShuffleTranscript& tr, const CdcScheme& s) {
    return Rational(static_cast<long long>(tr.signals.size()),
                    s.params.functions * s.params.files);
}

Rational multicast_gain(const ShuffleTranscript& tr, const CdcScheme& s) {
    if (tr.signals.empty()) {
        throw std::invalid_argument("multicast gain is undefined for an empty transcript");
    }
    Integer demanded = Integer(s.params.reduce_replication) * s.params.functions *
                       (s.params.files - s.params.files_per_worker);
    return Rational(demanded, Integer(static_cast<long long>(tr.signals.size())));
}

Rational load_t_design_scheme(long long N) {
    if (N < 2) throw std::invalid_argument("need at least two files");
    return Rational(N - 1, 2 * N);
}

Rational load_gdd_scheme(long long m, long long q) {
    if (m < 1 || q < 1) throw std::invalid_argument("need positive group structure");
    return Rational(1, 2) + Rational(q - 2, 2 * m * q);
}

Rational load_unequal_scheme(long long N, int t) {
    if (t < 2 || N < t) throw std::invalid_argument("need 2 <= t <= N");
    return Rational(N - t + 1, N * static_cast<long long>(t));
}

Rational predicted_load(const CdcScheme& s) {
    switch (s.kind) {
        case SchemeKind::TDesign: return load_t_design_scheme(s.params.files);
        case SchemeKind::Gdd: return load_gdd_scheme(s.group_count, s.group_size);
        case SchemeKind::Unequal: return load_unequal_scheme(s.params.files, s.strength);
    }
    throw std::invalid_argument("unknown scheme kind");
}

Rational predicted_gain(const CdcScheme& s) {
    const long long r = s.params.map_replication;
    if (s.kind == SchemeKind::TDesign) {
        TDesignParams p = TDesignParams::from(s.strength, s.params.files,
                                              s.params.files_per_worker, s.index);
        Rational lambda2 = lambda_derived(p, 2);
        return 2 * (Rational(r) - lambda2);
    }
    if (s.kind == SchemeKind::Gdd) {
        const long long m = s.group_count;
        const long long q = s.group_size;
        const long long M = s.params.files_per_worker;
        return Rational(2 * r) - Rational(2 * r * (M + q - 2), m * q + q - 2);
    }
    throw std::invalid_argument("no closed-form gain for unequal-replication schemes");
}

Rational load_lmya(long long K, long long r, long long s) {
    if (K < 1 || r < 1 || r > K || s < 1 || s > K) {
        throw std::invalid_argument("need 1 <= r, s <= K");
    }
    Rational total = 0;
    const long long lo = std::max(r + 1, s);
    const long long hi = std::min(r + s, K);
    for (long long l = lo; l <= hi; ++l) {
        Rational term = Rational(l - r, l - 1);
        term *= Rational(binomial(K - r, K - l) * binomial(r, l - s), binomial(K, s));
        total += term;
    }
    return total;
}

BaselineLoads baseline_loads(long long K, long long r, long long s) {
    if (K < 1 || r < 1 || r > K || s < 1 || s > K) {
        throw std::invalid_argument("need 1 <= r, s <= K");
    }
    BaselineLoads out;
    std::ostringstream note;
    if (r >= 2) {
        out.jq = Rational(s, r - 1) * Rational(K - r, K);
    } else {
        note << "jq needs r >= 2; ";
    }
    if (r >= 2 && r == s) {
        out.jwz = Rational(r, r - 1) * Rational(K - r, K);
    } else if (r != s) {
        note << "jwz needs r = s; ";
    } else {
        note << "jwz needs r >= 2; ";
    }
    if (K % r == 0) {
        Rational rho(r, K);
        out.wcj = Rational(1, 2) - Rational(1, 2) * rational_pow(rho, static_cast<unsigned long long>(r)) +
                  rational_pow(1 - rho, static_cast<unsigned long long>(r)) * Rational(1, 4 * r - 2);
    } else {
        note << "wcj needs r | K; ";
    }
    out.note = note.str();
    if (!out.note.empty()) out.note.pop_back();  // trailing space
    return out;
}

OneShotBounds one_shot_bounds(long long K, long long r, long long s, long long M, long long N) {
    if (K < 2 || r < 1 || s < 1 || M < 1 || N <= M) {
        throw std::invalid_argument("need K >= 2 and 1 <= M < N");
    }
    OneShotBounds b;
    b.max_gain = std::min(r + s - 1, K - 1);
    b.min_load = Rational(s) * Rational(N - M, N) / b.max_gain;
    return b;
}

LoadReport make_load_report(const CdcScheme& s, const ShuffleTranscript& tr) {
    LoadReport rep;
    rep.measured_load = communication_load(tr, s);
    rep.predicted_load = predicted_load(s);
    rep.measured_gain = multicast_gain(tr, s);
    Rational demanded = demanded_fraction(s);
    rep.predicted_gain = demanded / rep.predicted_load;
    OneShotBounds b = one_shot_bounds(s.params.workers, s.params.map_replication,
                                      s.params.reduce_replication, s.params.files_per_worker,
                                      s.params.files);
    rep.max_gain = b.max_gain;
    rep.load_lower_bound = b.min_load;
    rep.identity_holds = rep.measured_load * rep.measured_gain == demanded;
    rep.within_bounds = rep.measured_gain <= Rational(rep.max_gain) &&
                        rep.measured_load >= rep.load_lower_bound;
    return rep;
}

namespace {

ComparisonRow make_row(long long p, const CdcScheme& scheme) {
    SimulationConfig cfg;
    cfg.concrete = false;
    SimulationResult sim = simulate_end_to_end(scheme, cfg);
    LoadReport load = make_load_report(scheme, sim.transcript);

    ComparisonRow row;
    row.p = p;
    row.family = scheme.family;
    row.params = scheme.params;
    row.measured_load = load.measured_load;
    row.predicted_load = load.predicted_load;
    row.lmya = load_lmya(scheme.params.workers, scheme.params.map_replication,
                         scheme.params.reduce_replication);
    BaselineLoads base = baseline_loads(scheme.params.workers, scheme.params.map_replication,
                                        scheme.params.reduce_replication);
    row.wcj = base.wcj;
    row.jwz = base.jwz;
    row.jq = base.jq;
    row.lower_bound = load.load_lower_bound;
    row.measured_gain = load.measured_gain;
    row.max_gain = load.max_gain;
    row.optimality_ratio = row.lower_bound / row.measured_load;
    row.beats_lmya = row.measured_load < row.lmya;
    if (scheme.kind == SchemeKind::Gdd) {
        row.tabulated_gdd_load = Rational(1, 2) + Rational(p - 2, p * p);
        row.tabulated_value_differs = *row.tabulated_gdd_load != row.predicted_load;
    }
    return row;
}

std::string csv_cell(const std::optional<Rational>& r) {
    return r ? to_fraction_string(*r) : "n/a";
}

std::string csv_float(const std::optional<Rational>& r) {
    if (!r) return "n/a";
    std::ostringstream out;
    out.precision(12);
    out << to_double(*r);
    return out.str();
}

}  // namespace

ComparisonReport compare_report(const std::vector<long long>& primes, bool include_projective,
                                bool include_gdd) {
    ComparisonReport rep;
    for (long long p : primes) {
        if (include_projective) {
            BlockDesign d = projective_plane_sbibd(p);
            rep.rows.push_back(make_row(p, scheme_from_t_design(d, 2, 1)));
        }
        if (include_gdd) {
            BlockDesign d = transversal_gdd(p);
            rep.rows.push_back(make_row(p, scheme_from_gdd(d, 2, 1)));
        }
    }
    return rep;
}

std::string comparison_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "p,family,K,r,s,N,Q,"
           "L_measured,L_predicted,L_LMYA,L_WCJ,L_JWZ,L_JQ,L_lowerbound,g_measured,g_max,"
           "L_measured_float,L_predicted_float,L_LMYA_float,L_WCJ_float,L_JWZ_float,L_JQ_float,"
           "L_lowerbound_float,g_measured_float,g_max_float\n";
    for (const auto& row : report.rows) {
        out << row.p << ',' << row.family << ',' << row.params.workers << ','
            << row.params.map_replication << ',' << row.params.reduce_replication << ','
            << row.params.files << ',' << row.params.functions << ','
            << to_fraction_string(row.measured_load) << ',' << to_fraction_string(row.predicted_load)
            << ',' << to_fraction_string(row.lmya) << ',' << csv_cell(row.wcj) << ','
            << csv_cell(row.jwz) << ',' << csv_cell(row.jq) << ','
            << to_fraction_string(row.lower_bound) << ',' << to_fraction_string(row.measured_gain)
            << ',' << row.max_gain << ',' << csv_float(row.measured_load) << ','
            << csv_float(row.predicted_load) << ',' << csv_float(row.lmya) << ','
            << csv_float(row.wcj) << ',' << csv_float(row.jwz) << ',' << csv_float(row.jq) << ','
            << csv_float(row.lower_bound) << ',' << csv_float(row.measured_gain) << ','
            << row.max_gain << '\n';
    }
    return out.str();
}

}  // namespace cdc
