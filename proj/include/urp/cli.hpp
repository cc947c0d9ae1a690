#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "urp/decompose.hpp"
#include "urp/density.hpp"
#include "urp/difference.hpp"
#include "urp/finite_set.hpp"
#include "urp/oracle.hpp"
#include "urp/radix.hpp"

namespace urp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRefuted = 1;
inline constexpr int kUsage = 2;

namespace detail {

struct PairSource {
  std::string radix;
  std::string side = "A";
  std::string a_path;
  std::string b_path;
  std::string max;
};

inline void add_pair_options(CLI::App* cmd, PairSource& src, bool max_required_with_radix = true) {
  auto* radix = cmd->add_option("--radix", src.radix, "radix sequence, e.g. \"2,3|c2\"");
  cmd->add_option("--side", src.side, "set containing 1: A or B")->capture_default_str();
  auto* a = cmd->add_option("--a", src.a_path, "set file for A");
  auto* b = cmd->add_option("--b", src.b_path, "set file for B");
  cmd->add_option("--max", src.max, max_required_with_radix ? "truncation bound" : "upper end of the range");
  radix->excludes(a)->excludes(b);
  a->needs(b);
  b->needs(a);
}

inline PairDescriptor descriptor(const PairSource& src) {
  return {RadixSequence::parse(src.radix), parse_side(src.side)};
}

inline std::pair<FiniteSet, FiniteSet> load_pair(const PairSource& src, std::ostream& err) {
  if (!src.radix.empty()) {
    if (src.max.empty()) throw InvalidInput("--max is required with --radix");
    auto pd = descriptor(src);
    Integer bound = parse_integer(src.max);
    return {elements_up_to(pd, Which::A, bound), elements_up_to(pd, Which::B, bound)};
  }
  if (src.a_path.empty()) throw InvalidInput("give either --radix or --a/--b");
  auto a = load_finite_set(src.a_path);
  auto b = load_finite_set(src.b_path);
  for (const auto* loaded : {&a, &b})
    for (const auto& w : loaded->warnings) err << "warning: " << w << '\n';
  return {std::move(a.set), std::move(b.set)};
}

inline void write_csv_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  body(f);
}

inline void print_histogram(std::ostream& out, const oracle::CensusHistogram& h, const char* symbol,
                            std::size_t shown = 8) {
  for (const auto& [c, bucket] : h.counts) {
    out << symbol << '=' << c << ": " << bucket.total << " value(s)";
    if (!bucket.witnesses.empty()) {
      out << " [";
      for (std::size_t i = 0; i < bucket.witnesses.size() && i < shown; ++i) out << (i ? " " : "") << bucket.witnesses[i];
      if (bucket.total > shown) out << " ...";
      out << ']';
    }
    out << '\n';
  }
}

inline std::string window_text(const oracle::Window& w) { return "[" + to_string(w.lo) + "," + to_string(w.hi) + "]"; }

}  // namespace detail

// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"unique-representation pairs: generate, verify, decompose, analyze", "urp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  unsigned workers = 1;
  app.add_option("--workers", workers, "threads for window scans")->check(CLI::Range(1u, 256u));

  // gen
  auto* gen = app.add_subcommand("gen", "print one set of a radix pair");
  PairSource gen_src;
  std::string gen_set = "A", gen_count, gen_out;
  gen->add_option("--radix", gen_src.radix)->required();
  gen->add_option("--side", gen_src.side)->capture_default_str();
  gen->add_option("--set", gen_set, "which set to print: A or B")->capture_default_str();
  auto* gen_max = gen->add_option("--max", gen_src.max, "print elements <= max");
  auto* gen_cnt = gen->add_option("--count", gen_count, "print the first N elements");
  gen_max->excludes(gen_cnt);
  gen->add_option("--out", gen_out, "write to a file instead of stdout");

  // verify-sum
  auto* vsum = app.add_subcommand("verify-sum", "check r(n) = 1 on [0, max]");
  PairSource vsum_src;
  add_pair_options(vsum, vsum_src);

  // verify-diff
  auto* vdiff = app.add_subcommand("verify-diff", "check d(n) = 1 on a window");
  PairSource vdiff_src;
  std::string vdiff_window;
  std::size_t vdiff_k = 0;
  add_pair_options(vdiff, vdiff_src);
  auto* vdiff_w = vdiff->add_option("--window", vdiff_window, "lo:hi");
  vdiff->add_option("--k", vdiff_k, "use the interval I_k of the radix pair")->excludes(vdiff_w);

  // decompose
  auto* dec = app.add_subcommand("decompose", "recover radices and side from a pair prefix");
  PairSource dec_src;
  bool dec_no_census = false, dec_aligned = false;
  add_pair_options(dec, dec_src);
  dec->add_flag("--no-census", dec_no_census, "skip the up-front r(n) = 1 census");
  dec->add_flag("--assume-aligned", dec_aligned, "treat the bound as w_j - 1 and read off the last radix");

  // density
  auto* dens = app.add_subcommand("density", "A(x)B(x)/x curve and liminf points");
  PairSource dens_src;
  std::string dens_stride = "1", dens_out;
  std::size_t dens_k = 0;
  dens->add_option("--radix", dens_src.radix)->required();
  dens->add_option("--side", dens_src.side)->capture_default_str();
  dens->add_option("--max", dens_src.max, "largest x");
  dens->add_option("--stride", dens_stride)->capture_default_str();
  dens->add_option("--k", dens_k, "also list liminf points x_1..x_k");
  dens->add_option("--out", dens_out, "CSV file");

  // dk
  auto* dkc = app.add_subcommand("dk", "D_k and 2/(1+D_k)");
  std::string dk_radix, dk_out;
  std::size_t dk_k = 0;
  dkc->add_option("--radix", dk_radix)->required();
  dkc->add_option("--k", dk_k)->required()->check(CLI::PositiveNumber);
  dkc->add_option("--out", dk_out, "CSV table for k = 1..K");

  // extrema
  auto* ext = app.add_subcommand("extrema", "exact extrema of A(x)B(x)/x on a window");
  PairSource ext_src;
  std::string ext_window;
  ext->add_option("--radix", ext_src.radix)->required();
  ext->add_option("--side", ext_src.side)->capture_default_str();
  ext->add_option("--window", ext_window, "lo:hi with lo >= 1")->required();

  // solve-diff
  auto* sd = app.add_subcommand("solve-diff", "the unique a - b = n");
  PairSource sd_src;
  std::string sd_n;
  sd->add_option("--radix", sd_src.radix)->required();
  sd->add_option("--side", sd_src.side)->capture_default_str();
  sd->add_option("--n", sd_n)->required();

  // gadget
  auto* gad = app.add_subcommand("gadget", "place difference gadgets on a base pair");
  PairSource gad_src;
  std::size_t gad_nmax = 0;
  unsigned gad_exp = 4;
  std::uint64_t gad_cmax = 8;
  std::string gad_window, gad_out, gad_out_a, gad_out_b;
  add_pair_options(gad, gad_src);
  gad->add_option("--n-max", gad_nmax)->required();
  gad->add_option("--exponent", gad_exp)->capture_default_str()->check(CLI::Range(1u, 16u));
  gad->add_option("--window", gad_window, "run a difference census on lo:hi");
  gad->add_option("--cmax", gad_cmax)->capture_default_str();
  gad->add_option("--out", gad_out, "gadget CSV");
  gad->add_option("--out-a", gad_out_a, "merged A as a set file");
  gad->add_option("--out-b", gad_out_b, "merged B as a set file");

  // census
  auto* cen = app.add_subcommand("census", "histogram of r(n) or d(n) on a window");
  PairSource cen_src;
  std::string cen_window, cen_kind = "diff", cen_out;
  std::uint64_t cen_cmax = 8;
  add_pair_options(cen, cen_src);
  cen->add_option("--window", cen_window, "lo:hi")->required();
  cen->add_option("--kind", cen_kind)->check(CLI::IsMember({"sum", "diff"}))->capture_default_str();
  cen->add_option("--cmax", cen_cmax)->capture_default_str();
  cen->add_option("--out", cen_out, "CSV: n,d(n) or n,r(n)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  const oracle::CensusOptions census_opts{.workers = workers, .witness_limit = std::nullopt};

  try {
    if (*gen) {
      if (gen_src.max.empty() == gen_count.empty()) throw InvalidInput("give exactly one of --max or --count");
      auto pd = descriptor(gen_src);
      Which which = parse_which(gen_set);
      FiniteSet set;
      if (!gen_src.max.empty()) {
        set = elements_up_to(pd, which, parse_integer(gen_src.max));
      } else {
        Integer n = parse_integer(gen_count);
        if (n < 1) throw InvalidInput("--count must be positive");
        std::vector<Integer> values;
        for (Integer i = 0; i < n; ++i) values.push_back(nth_element(pd, which, i));
        Integer last = values.back();
        set = FiniteSet(std::move(values), last);
      }
      if (gen_out.empty())
        write_finite_set(out, set);
      else
        save_finite_set(gen_out, set);
      return kOk;
    }

    if (*vsum) {
      auto [a, b] = load_pair(vsum_src, err);
      Integer hi = std::min(a.bound(), b.bound());
      if (!vsum_src.max.empty() && vsum_src.a_path.size()) hi = parse_integer(vsum_src.max);
      oracle::Window w{0, hi};
      auto h = oracle::sum_census(a, b, w, {.workers = workers, .witness_limit = 8});
      if (h.all_unique()) {
        out << "all n in " << window_text(w) << ": r = 1\n";
        return kOk;
      }
      const auto& [n, c] = *h.first_violation;
      out << "violation: r(" << n << ") = " << c << '\n';
      print_histogram(out, h, "r");
      return kRefuted;
    }

    if (*vdiff) {
      auto [a, b] = load_pair(vdiff_src, err);
      oracle::Window w;
      if (vdiff_k > 0) {
        if (vdiff_src.radix.empty()) throw InvalidInput("--k needs --radix");
        auto iv = interval_bounds(descriptor(vdiff_src), vdiff_k);
        w = {iv.lo, iv.hi};
      } else if (!vdiff_window.empty()) {
        w = oracle::parse_window(vdiff_window);
      } else {
        throw InvalidInput("give --window or --k");
      }
      auto h = oracle::diff_census(a, b, w, {.workers = workers, .witness_limit = 8});
      if (h.all_unique()) {
        out << "all n in " << window_text(w) << ": d = 1\n";
        return kOk;
      }
      const auto& [n, c] = *h.first_violation;
      out << "violation: d(" << n << ") = " << c << '\n';
      print_histogram(out, h, "d");
      return kRefuted;
    }

    if (*dec) {
      auto [a, b] = load_pair(dec_src, err);
      auto report = decompose(a, b, {.census = !dec_no_census, .assume_aligned_bound = dec_aligned});
      out << "radices: " << (report.radix_prefix.empty() ? "-" : join(report.radix_prefix, ",")) << '\n';
      if (report.final_radix_inferred) out << "last radix read from the aligned bound\n";
      out << "side: " << name_of(report.side) << '\n';
      out << "status: " << to_string(report.status) << '\n';
      out << "residual sizes: A=" << report.residual_a.size() << " B=" << report.residual_b.size()
          << " (bound " << report.residual_a.bound() << ")\n";
      if (report.witness) out << "witness: " << *report.witness << " (" << report.detail << ")\n";
      return report.status == DecompositionStatus::Exhausted ? kOk : kRefuted;
    }

    if (*dens) {
      auto pd = descriptor(dens_src);
      if (dens_src.max.empty() && dens_k == 0) throw InvalidInput("give --max and/or --k");
      if (!dens_src.max.empty()) {
        auto curve = ratio_curve(pd, parse_integer(dens_src.max), parse_integer(dens_stride));
        if (dens_out.empty())
          write_density_csv(out, curve);
        else
          write_csv_to(dens_out, [&](std::ostream& f) { write_density_csv(f, curve); });
      }
      if (dens_k > 0) {
        for (const auto& lp : liminf_points(pd, dens_k))
          out << "k=" << lp.k << " x_k=" << lp.point.x << " A=" << lp.point.count_a << " B=" << lp.point.count_b
              << " A*B-x=" << (lp.point.ratio_num() - lp.point.x) << '\n';
      }
      return kOk;
    }

    if (*dkc) {
      auto radix = RadixSequence::parse(dk_radix);
      auto table = dk_table(radix, dk_k);
      const auto& last = table.back();
      out << "k=" << last.k << " D_k=" << to_string(last.dk) << " profile=" << to_string(last.profile) << '\n';
      if (!dk_out.empty()) write_csv_to(dk_out, [&](std::ostream& f) { write_dk_csv(f, table); });
      return kOk;
    }

    if (*ext) {
      auto pd = descriptor(ext_src);
      auto w = oracle::parse_window(ext_window);
      auto ex = ratio_extrema(pd, w.lo, w.hi);
      for (const auto& [label, p] : {std::pair{"max", &ex.max}, std::pair{"min", &ex.min}})
        out << label << " x=" << p->x << " A=" << p->count_a << " B=" << p->count_b << " ratio=" << p->ratio_num()
            << '/' << p->ratio_den() << " (" << format_float(to_double(p->ratio())) << ")\n";
      return kOk;
    }

    if (*sd) {
      auto pd = descriptor(sd_src);
      Integer n = parse_integer(sd_n);
      auto [a, b] = solve_difference(pd, n);
      out << "n=" << n << " a=" << a << " b=" << b << '\n';
      return kOk;
    }

    if (*gad) {
      auto [a, b] = load_pair(gad_src, err);
      auto placement = place_gadgets({a, b}, gad_nmax, gad_exp);
      for (const auto& g : placement.families)
        out << "gadget n=" << g.n << " T=" << g.t << " c=(" << join(g.c_offsets_raw, ",") << ") d=("
            << join(g.d_offsets_raw, ",") << ")\n";
      for (const auto& c : placement.collisions)
        out << "collision: gadget " << c.family << " puts " << c.value << " in " << name_of(c.set)
            << (c.with_family == 0 ? ", already in the base" : ", already placed by gadget " + std::to_string(c.with_family))
            << '\n';
      for (const auto& u : placement.unresolved)
        out << "unresolved: gadget " << u.family << " diagonal pair (" << u.a << "," << u.b << ") at k=" << u.k
            << " was already counted\n";
      for (const auto& [label, s] : {std::pair{'A', &placement.slack_a}, std::pair{'B', &placement.slack_b}}) {
        out << "slack " << label << ": +" << s->added;
        if (s->first_violation)
          out << ", exceeds sqrt of the base count first at x=" << *s->first_violation << '\n';
        else
          out << ", within sqrt of the base count\n";
      }
      if (!gad_out.empty()) write_csv_to(gad_out, [&](std::ostream& f) { write_gadget_csv(f, placement); });
      if (!gad_out_a.empty()) save_finite_set(gad_out_a, placement.a);
      if (!gad_out_b.empty()) save_finite_set(gad_out_b, placement.b);
      if (gad_window.empty()) return kOk;

      auto report = multiplicity_report(placement.a, placement.b, oracle::parse_window(gad_window), gad_cmax,
                                        &placement, census_opts);
      for (const auto& [c, bucket] : report.census.counts)
        if (c <= gad_cmax) out << "d=" << c << ": " << bucket.total << " value(s)\n";
      if (report.above_c_max) out << "d>" << gad_cmax << ": " << report.above_c_max << " value(s)\n";
      int status = kOk;
      for (const auto& check : report.checks) {
        out << "lower bound d(" << check.k << ") >= " << check.expected << ": observed " << check.observed
            << (check.holds() ? " ok" : " FAILED") << (check.sound ? "" : " (diagonal clash)") << '\n';
        if (!check.holds() && check.sound) status = kRefuted;
      }
      return status;
    }

    if (*cen) {
      auto [a, b] = load_pair(cen_src, err);
      auto w = oracle::parse_window(cen_window);
      bool sums = cen_kind == "sum";
      auto h = sums ? oracle::sum_census(a, b, w, census_opts) : oracle::diff_census(a, b, w, census_opts);
      out << (sums ? "r" : "d") << " census on " << window_text(w) << '\n';
      std::uint64_t above = 0;
      for (const auto& [c, bucket] : h.counts) {
        if (c > cen_cmax) {
          above += bucket.total;
          continue;
        }
        out << (sums ? "r" : "d") << '=' << c << ": " << bucket.total << " value(s)";
        if (!bucket.witnesses.empty()) {
          out << " [";
          for (std::size_t i = 0; i < bucket.witnesses.size() && i < 8; ++i) out << (i ? " " : "") << bucket.witnesses[i];
          if (bucket.total > 8) out << " ...";
          out << ']';
        }
        out << '\n';
      }
      if (above) out << (sums ? "r>" : "d>") << cen_cmax << ": " << above << " value(s)\n";
      if (!cen_out.empty()) write_csv_to(cen_out, [&](std::ostream& f) { write_census_csv(f, h); });
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace urp::cli
