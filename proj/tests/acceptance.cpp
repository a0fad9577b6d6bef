// Acceptance run at N=6, M=8: one PASS/FAIL line per criterion.
// Exit status is nonzero only when the harness itself fails; a red criterion
// is reported, not turned into a crash.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "peierls/io.hpp"
#include "peierls/sweep.hpp"
#include "peierls/validate.hpp"

using namespace peierls;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& measured) {
  std::printf("%s criterion %d: %s | %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), measured.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1]) return false;
  return true;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-6; }

}  // namespace

int main() {
  try {
    SweepConfig cfg;  // N=6, M=8, ratios {0.5, 1, 3}, lambda 0..4 step 0.05
    const auto rows = run_sweep(cfg);
    {
      std::ofstream csv("acceptance_sweep.csv");
      write_csv(rows, csv);
    }
    std::map<double, std::vector<SweepRow>> by_ratio;
    for (const auto& r : rows) by_ratio[r.omega_ratio].push_back(r);
    std::map<double, CriticalReport> crit;
    for (const auto& c : detect_critical_by_ratio(rows)) crit[c.omega_ratio] = c;
    auto at = [&](double ratio, double lambda) -> const SweepRow& {
      for (const auto& r : by_ratio.at(ratio))
        if (near(r.lambda_eff, lambda)) return r;
      throw std::runtime_error("missing grid point");
    };

    {  // 1
      const double target = std::log(6.0);
      double worst = 0;
      std::ostringstream m;
      for (double ratio : {1.0, 3.0}) {
        const double s = at(ratio, 4.0).entropy;
        worst = std::max(worst, std::abs(s - target));
        m << "S(4, w/t=" << ratio << ")=" << fmt("%.4f", s) << " ";
      }
      m << "ln6=" << fmt("%.4f", target) << " max dev " << fmt("%.4f", worst);
      report(1, worst <= 0.05, "entropy saturation within 0.05 of ln 6 at lambda=4", m.str());
    }

    {  // 2
      double ds = 0, de = 0, dk = 0;
      for (auto& [ratio, rs] : by_ratio) {
        const auto& r = at(ratio, 0.0);
        ds = std::max(ds, std::abs(r.entropy));
        de = std::max(de, std::abs(r.ground_energy + 2.0));
        dk = std::max(dk, std::abs(r.k_gs) + (r.degenerate ? 1.0 : 0.0));
      }
      report(2, ds <= 1e-10 && de <= 1e-10 && dk == 0.0, "weak-coupling limit at lambda=0",
             "max S=" + fmt("%.2e", ds) + " max |E0+2|=" + fmt("%.2e", de) + " K_gs=0 nondegenerate: " +
                 (dk == 0.0 ? "yes" : "no"));
    }

    {  // 3
      bool ok = true;
      std::ostringstream m;
      double previous = 1e300;
      for (auto& [ratio, rs] : by_ratio) {
        const auto& c = crit.at(ratio);
        if (!c.lambda_c) {
          ok = false;
          m << "w/t=" << ratio << ": no transition ";
          continue;
        }
        const double lc = *c.lambda_c;
        for (const auto& r : rs) {
          const bool below = r.lambda_eff < lc;
          if (below && (r.k_gs != 0.0 || r.degenerate)) ok = false;
          if (!below && (r.k_gs == 0.0 || !r.degenerate)) ok = false;
        }
        if (lc < 0.5 || lc > 1.5) ok = false;
        if (lc > previous) ok = false;
        previous = lc;
        m << "w/t=" << ratio << ": lambda_c=" << fmt("%.3f", lc) << "+-" << fmt("%.3f", c.uncertainty) << " ";
      }
      m << "(non-increasing in w/t, K=0 below, degenerate pair at and above)";
      report(3, ok, "level crossing, lambda_c in [0.5, 1.5], non-increasing in w/t", m.str());
    }

    {  // 4
      bool ok = true;
      std::ostringstream m;
      for (auto& [ratio, rs] : by_ratio) {
        const double lc = *crit.at(ratio).lambda_c;
        std::vector<double> s1, sg;
        std::vector<std::vector<double>> xi(6);
        for (const auto& r : rs) {
          if (r.lambda_eff >= lc) {
            s1.push_back(r.contributions[0]);
            sg.push_back(r.entropy);
          } else if (r.lambda_eff > 0) {
            for (int a = 0; a < 6; ++a) xi[a].push_back(r.xis[a]);
          }
        }
        const double rho = pearson(s1, sg);
        bool unique = nondecreasing(xi[0]);
        for (int a = 1; a < 6; ++a) unique = unique && !nondecreasing(xi[a]);
        ok = ok && rho > 0.95 && unique;
        m << "w/t=" << ratio << ": corr(S1,S_gs)=" << fmt("%.3f", rho)
          << (unique ? " xi1 unique increasing; " : " xi1 not unique increasing; ");
      }
      report(4, ok, "alpha=1 dominance (corr > 0.95 above lambda_c, xi1 sole increasing below)", m.str());
    }

    {  // 5
      bool ok = true;
      std::ostringstream m;
      auto share = [](const SweepRow& r) { return (r.contributions[0] + r.contributions[3] + r.contributions[4]) / r.entropy; };
      for (auto& [ratio, rs] : by_ratio) {
        const double lc = *crit.at(ratio).lambda_c;
        const double h = crit.at(ratio).uncertainty;
        const double lo = share(at(ratio, lc - h));
        const double hi = share(at(ratio, lc + h));
        ok = ok && lo >= 0.7 && lo <= 0.9 && hi >= 0.7 && hi <= 0.9;
        m << "w/t=" << ratio << ": (S1+S4+S5)/S=" << fmt("%.3f", lo) << "," << fmt("%.3f", hi) << " ";
      }
      double worst = 0;
      for (const auto& a : by_ratio.at(1.0)) {
        if (a.lambda_eff <= 0) continue;
        const auto& b = at(3.0, a.lambda_eff);
        for (int alpha : {0, 3, 4})
          worst = std::max(worst, std::abs(a.contributions[alpha] / a.entropy - b.contributions[alpha] / b.entropy));
      }
      ok = ok && worst <= 0.02;
      m << "max |dS_a/S| (w/t 1 vs 3, a=1,4,5)=" << fmt("%.4f", worst);
      report(5, ok, "S1+S4+S5 in [0.7, 0.9] of S_gs at lambda_c; ratio independence within 0.02", m.str());
    }

    {  // 6
      bool ok1 = true;
      std::ostringstream m;
      for (const auto& r : by_ratio.at(1.0)) {
        for (int a = 0; a < 6; ++a) {
          const double want = a == 2 ? 1.0 : 0.0;
          if (!near(r.k_labels[a], want)) ok1 = false;
        }
      }
      const auto& s = at(1.0, 2.0);
      m << "w/t=1 lambda=2 labels/pi:";
      for (double k : s.k_labels) m << " " << fmt("%.3f", k);
      bool swap = false;
      const auto& half = by_ratio.at(0.5);
      for (std::size_t i = 1; i < half.size(); ++i) {
        const auto& a = half[i - 1];
        const auto& b = half[i];
        if (a.lambda_eff < 2.5 - 1e-9 || b.lambda_eff > 3.0 + 1e-9) continue;
        const bool ab = near(a.k_labels[2], 0) && near(a.k_labels[5], 1) && near(b.k_labels[2], 1) && near(b.k_labels[5], 0);
        const bool ba = near(a.k_labels[2], 1) && near(a.k_labels[5], 0) && near(b.k_labels[2], 0) && near(b.k_labels[5], 1);
        swap = swap || ab || ba;
      }
      m << "; alpha=3 is pi with five zeros at every w/t=1 point: " << (ok1 ? "yes" : "no")
        << "; alpha=3/6 0<->pi swap in [2.5, 3] at w/t=0.5: " << (swap ? "yes" : "no");
      report(6, ok1 && swap, "momentum labels (alpha=3 carries pi, 3<->6 swap at w/t=0.5)", m.str());
    }

    {  // 7
      RowComparison worst;
      for (int n : {2, 4})
        for (int m = 0; m <= 4; ++m)
          for (double lambda : {0.0, 0.5, 1.0, 2.0})
            for (double ratio : cfg.omega_ratios) {
              const auto c = oracle_comparison(params_from_lambda(lambda, ratio, n, m));
              worst.energy = std::max(worst.energy, c.energy);
              worst.xi = std::max(worst.xi, c.xi);
              worst.entropy = std::max(worst.entropy, c.entropy);
            }
      report(7, worst.energy <= 1e-9 && worst.xi <= 1e-8 && worst.entropy <= 1e-9,
             "Lanczos pipeline equals dense pipeline (N<=4, M<=4)",
             "max dE=" + fmt("%.2e", worst.energy) + " dxi=" + fmt("%.2e", worst.xi) + " dS=" + fmt("%.2e", worst.entropy));
    }

    {  // 8
      PointDiagnostics w;
      double sum_err = 0;
      std::size_t bad = 0;
      for (const auto& r : rows) {
        const auto& d = r.diagnostics;
        w.route_distance = std::max(w.route_distance, d.route_distance);
        sum_err = std::max(sum_err, d.weight_sum_error);
        w.commutator = std::max(w.commutator, d.commutator);
        w.hamiltonian_translation = std::max(w.hamiltonian_translation, d.hamiltonian_translation);
        w.partner_distance = std::max(w.partner_distance, d.partner_distance);
        w.bz_defect = std::max(w.bz_defect, d.bz_defect);
        bad += d.ok() ? 0 : 1;
      }
      const bool ok = w.route_distance <= 1e-8 && sum_err <= 1e-10 && w.commutator <= 1e-8 &&
                      w.hamiltonian_translation <= 1e-12 && w.partner_distance <= 1e-8 && w.bz_defect <= 1e-12 &&
                      bad == 0;
      std::ostringstream m;
      m << rows.size() << " points, route " << fmt("%.1e", w.route_distance) << ", weight sum " << fmt("%.1e", sum_err)
        << ", [rho,K_e] " << fmt("%.1e", w.commutator) << ", HT-TH " << fmt("%.1e", w.hamiltonian_translation)
        << ", partners " << fmt("%.1e", w.partner_distance) << ", BZ " << fmt("%.1e", w.bz_defect) << ", rows flagged "
        << bad;
      report(8, ok, "internal consistency at every sweep point", m.str());
    }

    {  // 9
      ConvergeOptions o;
      o.limit_max_phonons = 10;  // accepting M <= 9 needs the M=10 step
      const auto r = converge(params_from_lambda(2.0, 1.0, 6, 0), o);
      bool monotone = true;
      for (std::size_t i = 1; i < r.trace.size(); ++i)
        monotone = monotone && r.trace[i].ground_energy <= r.trace[i - 1].ground_energy + 1e-12;
      const auto& last = r.trace.back();
      std::ostringstream m;
      m << (r.converged ? "accepted M=" + std::to_string(r.accepted_max_phonons) : r.reason) << "; at M="
        << last.max_phonons << " dE/E=" << fmt("%.2e", last.energy_change) << " max dP=" << fmt("%.2e", last.distribution_change)
        << "; E0(M) non-increasing: " << (monotone ? "yes" : "no");
      report(9, r.converged && r.accepted_max_phonons <= 9 && monotone,
             "convergence at lambda=2, w/t=1 with M <= 9 under 1e-4", m.str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance harness error: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return 0;
}
