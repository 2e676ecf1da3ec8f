#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdlimits/acceptance.hpp"
#include "pdlimits/io.hpp"
#include "pdlimits/pd_density.hpp"

namespace pdl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitGuard = 3;

namespace detail {

struct FamilyArgs {
  std::string name = "permutation";
  std::string phi = "1";
  int q = 2;
  std::string m_csv;
  std::string construction = "multiset";

  void attach(CLI::App* cmd, bool required = true) {
    auto* o = cmd->add_option("--family", name,
                              "permutation | polynomial-multiset-Fq | "
                              "polynomial-selection-Fq | custom-csv");
    if (required) o->required();
    cmd->add_option("--phi", phi, "tilt parameter (exact decimal or p/q)");
    cmd->add_option("--q", q, "field size for polynomial families");
    cmd->add_option("--m-csv", m_csv, "CSV of custom m_i (columns i,m_i)");
    cmd->add_option("--construction", construction,
                    "assembly | multiset | selection (custom families)");
  }

  FamilySpec build() const {
    const Rational p = rational_from_decimal(phi);
    if (name == "custom-csv") {
      std::ifstream in(m_csv);
      if (!in) throw std::invalid_argument("cannot open m CSV: " + m_csv);
      ConstructionKind kind;
      if (construction == "assembly") kind = ConstructionKind::assembly;
      else if (construction == "multiset") kind = ConstructionKind::multiset;
      else if (construction == "selection") kind = ConstructionKind::selection;
      else throw std::invalid_argument("unknown construction: " + construction);
      return FamilySpec::custom(kind, load_m_csv(in), p);
    }
    return builtin_family(name, p, q);
  }
};

inline IntervalFamily parse_intervals(const std::string& text) {
  IntervalFamily iv;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    const auto colon = piece.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("intervals: expected a:b pairs separated by commas");
    iv.intervals.emplace_back(rational_from_decimal(piece.substr(0, colon)),
                              rational_from_decimal(piece.substr(colon + 1)));
  }
  iv.validate();
  return iv;
}

/// PD parameter of the family's limit law: phi * theta_FS.
inline double pd_theta(const FamilySpec& fam) {
  if (!fam.singular()) throw std::invalid_argument("family carries no singular data");
  return to_double(fam.phi()) * fam.singular()->theta;
}

}  // namespace detail

/// Entry point shared by the binary and by tests; argv-style arguments
/// without the program name.  Exit codes: 0 success, 2 validation error,
/// 3 guard refusal.
inline int run(const std::vector<std::string>& args) {
  CLI::App app{"Poisson-Dirichlet limit laboratory for assemblies, multisets, "
               "selections, and prime factorizations"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  // --- dickman ---
  auto* cmd_dickman = app.add_subcommand("dickman", "tabulate the Dickman rho function");
  double dk_tmax = 5.0, dk_step = 1e-3;
  std::string dk_out = "rho.csv";
  cmd_dickman->add_option("--tmax", dk_tmax);
  cmd_dickman->add_option("--step", dk_step);
  cmd_dickman->add_option("--out", dk_out)->required();

  // --- gtheta ---
  auto* cmd_g = app.add_subcommand("gtheta", "tabulate g_theta");
  double g_theta = 1.0, g_tmax = 5.0, g_step = 1e-3;
  std::string g_out = "gtheta.csv";
  cmd_g->add_option("--theta", g_theta)->required();
  cmd_g->add_option("--tmax", g_tmax);
  cmd_g->add_option("--step", g_step);
  cmd_g->add_option("--out", g_out)->required();

  // --- coeffs ---
  auto* cmd_coeffs = app.add_subcommand("coeffs", "exact q_phi(n) coefficients");
  detail::FamilyArgs co_fam;
  co_fam.attach(cmd_coeffs);
  int co_N = 50;
  std::string co_out = "coeffs.csv";
  cmd_coeffs->add_option("--N", co_N);
  cmd_coeffs->add_option("--out", co_out)->required();

  // --- moments ---
  auto* cmd_mom = app.add_subcommand("moments", "exact mixed moments E{C_i1...C_ik}");
  detail::FamilyArgs mo_fam;
  mo_fam.attach(cmd_mom);
  int mo_n = 100;
  std::string mo_idx = "1";
  std::string mo_out;
  cmd_mom->add_option("--n", mo_n)->required();
  cmd_mom->add_option("--indices", mo_idx, "comma-separated distinct sizes")->required();
  cmd_mom->add_option("--out", mo_out);

  // --- sample ---
  auto* cmd_sample = app.add_subcommand("sample", "draw tilted structures");
  detail::FamilyArgs sa_fam;
  sa_fam.attach(cmd_sample);
  int sa_n = 100, sa_k = 5;
  long long sa_reps = 1000;
  std::uint64_t sa_seed = 0;
  std::string sa_mode = "scaled", sa_format = "csv", sa_out = "samples.csv";
  cmd_sample->add_option("--n", sa_n)->required();
  cmd_sample->add_option("--replicates", sa_reps)->required();
  cmd_sample->add_option("--seed", sa_seed, "RNG seed (reproducibility contract)")->required();
  cmd_sample->add_option("--mode", sa_mode, "scaled | profile");
  cmd_sample->add_option("--format", sa_format, "csv | json");
  cmd_sample->add_option("--k", sa_k, "columns of L_1..L_k in scaled mode");
  cmd_sample->add_option("--out", sa_out)->required();

  // --- intensity ---
  auto* cmd_int = app.add_subcommand("intensity", "multi-intensity estimates vs bounds");
  detail::FamilyArgs in_fam;
  in_fam.attach(cmd_int, /*required=*/false);
  int in_n = 1000;
  long long in_reps = 10'000;
  std::uint64_t in_seed = 0;
  double in_sticks_theta = 0.0;
  bool in_primes = false, in_exact = false;
  std::string in_intervals, in_out = "intensity.json";
  cmd_int->add_option("--n", in_n);
  cmd_int->add_option("--intervals", in_intervals, "a:b,c:d,... (exact decimals)")->required();
  cmd_int->add_option("--replicates", in_reps)->required();
  cmd_int->add_option("--seed", in_seed)->required();
  cmd_int->add_option("--sticks-theta", in_sticks_theta,
                      "sample the PD(theta) process itself instead of a family");
  cmd_int->add_flag("--primes", in_primes, "sample scaled log prime factors");
  cmd_int->add_flag("--exact", in_exact, "also compute the exact intensity (families only)");
  cmd_int->add_option("--out", in_out)->required();

  // --- ks ---
  auto* cmd_ks = app.add_subcommand("ks", "KS distance of L_1 against a PD reference");
  detail::FamilyArgs ks_fam;
  ks_fam.attach(cmd_ks);
  int ks_n = 2000;
  long long ks_reps = 10'000;
  std::uint64_t ks_seed = 0;
  double ks_theta_ref = 0.0;
  std::string ks_out = "ks.json";
  cmd_ks->add_option("--n", ks_n)->required();
  cmd_ks->add_option("--replicates", ks_reps)->required();
  cmd_ks->add_option("--seed", ks_seed)->required();
  cmd_ks->add_option("--theta-ref", ks_theta_ref,
                     "reference PD parameter (default: the family's phi*theta)");
  cmd_ks->add_option("--out", ks_out)->required();

  // --- billingsley ---
  auto* cmd_bill = app.add_subcommand("billingsley", "prime-factor limit checks");
  std::uint64_t bi_n = 1'000'000;
  long long bi_reps = 100'000;
  std::uint64_t bi_seed = 0;
  std::string bi_out = "billingsley.json";
  cmd_bill->add_option("--n", bi_n);
  cmd_bill->add_option("--replicates", bi_reps)->required();
  cmd_bill->add_option("--seed", bi_seed)->required();
  cmd_bill->add_option("--out", bi_out)->required();

  // --- verify-all ---
  auto* cmd_verify = app.add_subcommand("verify-all", "run the acceptance property suite");
  std::string vf_budget = "fast", vf_out, vf_tmp = "/tmp";
  cmd_verify->add_option("--budget", vf_budget, "fast | full");
  cmd_verify->add_option("--out", vf_out, "JSON summary path");
  cmd_verify->add_option("--tmpdir", vf_tmp, "scratch directory for rerun comparisons");

  std::vector<const char*> argv;
  argv.push_back("pdlimits");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (cmd_dickman->parsed()) {
      const FunctionTable t = solve_dickman(dk_tmax, dk_step);
      std::ostringstream os;
      t.write_csv(os);
      write_text_file(dk_out, os.str());
      return kExitOk;
    }
    if (cmd_g->parsed()) {
      const FunctionTable t = solve_gtheta(g_theta, g_tmax, g_step);
      std::ostringstream os;
      t.write_csv(os);
      write_text_file(g_out, os.str());
      return kExitOk;
    }
    if (cmd_coeffs->parsed()) {
      const FamilySpec fam = co_fam.build();
      write_text_file(co_out, coeffs_csv(object_series(fam, co_N)));
      return kExitOk;
    }
    if (cmd_mom->parsed()) {
      const FamilySpec fam = mo_fam.build();
      std::vector<int> idx;
      std::stringstream ss(mo_idx);
      std::string piece;
      while (std::getline(ss, piece, ',')) idx.push_back(std::stoi(piece));
      const CoeffSeries q = object_series(fam, mo_n);
      const Rational exact = mixed_moment(fam, q, mo_n, idx);
      double rhs = 0.0, ratio = 0.0;
      long long isum = 0;
      for (int i : idx) isum += i;
      if (fam.singular() && isum < mo_n) {
        rhs = master_rhs(detail::pd_theta(fam), mo_n, idx);
        ratio = to_double(exact) / rhs;
      }
      const Json j = moment_record_json(fam, mo_n, idx, exact, rhs, ratio);
      if (mo_out.empty())
        std::printf("%s\n", j.dump(2).c_str());
      else
        write_text_file(mo_out, j.dump(2) + "\n");
      return kExitOk;
    }
    if (cmd_sample->parsed()) {
      const FamilySpec fam = sa_fam.build();
      const StructureSampler sampler(fam, sa_n);
      std::vector<CountVector> cvs(static_cast<std::size_t>(sa_reps));
      constexpr long long kChunk = 1024;
      const std::size_t chunks = static_cast<std::size_t>((sa_reps + kChunk - 1) / kChunk);
      parallel_for(
          chunks,
          [&](std::size_t b, std::size_t e) {
            for (std::size_t c = b; c < e; ++c) {
              Rng rng = Rng::stream(sa_seed, c);
              const long long lo = static_cast<long long>(c) * kChunk;
              const long long hi = std::min(sa_reps, lo + kChunk);
              for (long long r = lo; r < hi; ++r) cvs[r] = sampler.sample(rng);
            }
          },
          threads);
      if (sa_mode == "profile") {
        write_text_file(sa_out, profile_samples_csv(cvs));
      } else if (sa_mode == "scaled") {
        std::vector<ScaledSizeSeq> seqs;
        seqs.reserve(cvs.size());
        for (const auto& cv : cvs) seqs.push_back(scaled_sizes(cv, sa_k));
        if (sa_format == "json") {
          Json j;
          j["schema"] = 1;
          j["family"] = family_descriptor(fam);
          j["n"] = sa_n;
          j["seed"] = sa_seed;
          Json rows = Json::array();
          for (const auto& s : seqs) {
            std::vector<double> row(s.values.begin(),
                                    s.values.begin() + std::min<std::size_t>(sa_k, s.values.size()));
            rows.push_back(row);
          }
          j["L"] = rows;
          write_text_file(sa_out, j.dump() + "\n");
        } else {
          write_text_file(sa_out, scaled_samples_csv(seqs, sa_k));
        }
      } else {
        throw std::invalid_argument("sample: mode must be scaled or profile");
      }
      return kExitOk;
    }
    if (cmd_int->parsed()) {
      const IntervalFamily iv = detail::parse_intervals(in_intervals);
      IntensityReport rep;
      if (in_primes) {
        const auto sieve = primes_up_to(static_cast<std::uint32_t>(
            std::ceil(std::sqrt(static_cast<double>(in_n))) + 2));
        rep = mc_intensity_primes(static_cast<std::uint64_t>(in_n), iv, in_reps, in_seed,
                                  sieve, threads);
      } else if (in_sticks_theta > 0.0) {
        rep = mc_intensity_sticks(PDParams{in_sticks_theta}, iv, in_reps, in_seed, threads);
      } else {
        const FamilySpec fam = in_fam.build();
        const StructureSampler sampler(fam, in_n);
        rep = mc_intensity(sampler, iv, in_reps, in_seed, detail::pd_theta(fam), threads);
        if (in_exact) rep.exact = exact_intensity(fam, object_series(fam, in_n), in_n, iv);
      }
      write_text_file(in_out, intensity_report_json(rep).dump(2) + "\n");
      return kExitOk;
    }
    if (cmd_ks->parsed()) {
      const FamilySpec fam = ks_fam.build();
      const double theta_ref = ks_theta_ref > 0.0 ? ks_theta_ref : detail::pd_theta(fam);
      const PdReference ref = PdReference::make(PDParams{theta_ref});
      const StructureSampler sampler(fam, ks_n);
      std::vector<double> l1(static_cast<std::size_t>(ks_reps));
      constexpr long long kChunk = 1024;
      const std::size_t chunks = static_cast<std::size_t>((ks_reps + kChunk - 1) / kChunk);
      parallel_for(
          chunks,
          [&](std::size_t b, std::size_t e) {
            for (std::size_t c = b; c < e; ++c) {
              Rng rng = Rng::stream(ks_seed, c);
              const long long lo = static_cast<long long>(c) * kChunk;
              const long long hi = std::min(ks_reps, lo + kChunk);
              for (long long r = lo; r < hi; ++r) {
                const CountVector cv = sampler.sample(rng);
                int big = 0;
                for (int i = ks_n; i >= 1; --i)
                  if (cv.counts[i - 1] > 0) {
                    big = i;
                    break;
                  }
                l1[r] = static_cast<double>(big) / ks_n;
              }
            }
          },
          threads);
      const KSResult res = ks_largest_part(l1, ref);
      Json j;
      j["schema"] = 1;
      j["family"] = family_descriptor(fam);
      j["n"] = ks_n;
      j["replicates"] = ks_reps;
      j["seed"] = ks_seed;
      j["reference"] = res.reference;
      j["ks_statistic"] = res.statistic;
      write_text_file(ks_out, j.dump(2) + "\n");
      return kExitOk;
    }
    if (cmd_bill->parsed()) {
      const auto sieve = primes_up_to(static_cast<std::uint32_t>(
          std::ceil(std::sqrt(static_cast<double>(bi_n))) + 2));
      const double mert = mertens_window_sum(static_cast<double>(bi_n), 0.2, 0.5, sieve);
      const FunctionTable rho = solve_dickman(3.0, 1e-3);
      constexpr long long kChunk = 8192;
      const std::size_t chunks = static_cast<std::size_t>((bi_reps + kChunk - 1) / kChunk);
      std::vector<long long> hits(chunks, 0);
      parallel_for(
          chunks,
          [&](std::size_t b, std::size_t e) {
            for (std::size_t c = b; c < e; ++c) {
              Rng rng = Rng::stream(bi_seed, c);
              const long long lo = static_cast<long long>(c) * kChunk;
              const long long hi = std::min(bi_reps, lo + kChunk);
              long long h = 0;
              for (long long r = lo; r < hi; ++r) {
                const ScaledSizeSeq seq = sample_prime_factors(bi_n, rng, sieve, 1);
                h += seq.values[0] <= 0.5 ? 1 : 0;
              }
              hits[c] = h;
            }
          },
          threads);
      long long total = 0;
      for (long long h : hits) total += h;
      Json j;
      j["schema"] = 1;
      j["n"] = bi_n;
      j["replicates"] = bi_reps;
      j["seed"] = bi_seed;
      j["mertens_window_sum_0.2_0.5"] = mert;
      j["log_2.5"] = std::log(2.5);
      j["pr_L1_le_half"] = static_cast<double>(total) / static_cast<double>(bi_reps);
      j["rho_2"] = rho.value_at(2.0);
      write_text_file(bi_out, j.dump(2) + "\n");
      return kExitOk;
    }
    if (cmd_verify->parsed()) {
      if (vf_budget != "fast" && vf_budget != "full")
        throw std::invalid_argument("verify-all: budget must be fast or full");
      const auto results = acceptance::run_all(run, vf_tmp, threads);
      bool all = true;
      Json j;
      j["schema"] = 1;
      j["budget"] = vf_budget;
      Json items = Json::array();
      for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.label.c_str(), r.seconds, r.detail.c_str());
        all = all && r.pass;
        items.push_back({{"id", r.id},
                         {"label", r.label},
                         {"pass", r.pass},
                         {"seconds", r.seconds},
                         {"detail", r.detail}});
      }
      j["criteria"] = items;
      j["all_pass"] = all;
      if (!vf_out.empty()) write_text_file(vf_out, j.dump(2) + "\n");
      return all ? kExitOk : 1;
    }
  } catch (const guard_error& e) {
    std::fprintf(stderr, "guard refusal: %s\n", e.what());
    return kExitGuard;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace pdl::cli
