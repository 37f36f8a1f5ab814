#include "subflow/app.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subflow/initial_data.hpp"
#include "subflow/rng.hpp"
#include "subflow/snapshot.hpp"

namespace subflow {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const FlowTrace& trace) {
  std::ostringstream os;
  os << "step,time,Ep,Ep_delta,sup_grad,sup_T,Ln1_g,dissipation\n";
  for (const TraceRow& r : trace.rows) {
    os << r.step << "," << fmt(r.time) << "," << fmt(r.report.Ep) << "," << fmt(r.report.Ep_delta)
       << "," << fmt(r.report.sup_grad) << "," << fmt(r.report.sup_T) << ","
       << fmt(r.report.Ln1_g) << "," << fmt(r.dissipation) << "\n";
  }
  write_text_atomic(path, os.str());
}

void write_verdicts_csv(const std::filesystem::path& path, const std::vector<Verdict>& verdicts) {
  std::ostringstream os;
  os << "name,pass,measured\n";
  for (const Verdict& v : verdicts) {
    os << v.name << "," << (v.pass ? 1 : 0) << ",";
    for (std::size_t i = 0; i < v.measured.size(); ++i) {
      if (i) os << ";";
      os << v.measured[i].first << "=" << fmt(v.measured[i].second);
    }
    os << "\n";
  }
  write_text_atomic(path, os.str());
}

std::string metadata_block(const RunConfig* cfg) {
  std::ostringstream os;
  os << "j_sign: " << OperatorConvention::calibrated().j_sign << "\n";
  os << "rng: " << kRngVersion << "\n";
  os << "summation: pairwise-tree\n";
  if (cfg) {
    os << "config:\n";
    std::istringstream in(serialize_config(*cfg));
    std::string line;
    while (std::getline(in, line)) os << "  " << line << "\n";
  }
  return os.str();
}

int cmd_run(const RunConfig& cfg, bool quiet) {
  try {
    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);
    std::filesystem::create_directories(out_dir / "snapshots");

    const MapState phi0 = generate_initial(cfg);
    const FlowParams fp = cfg.make_flow_params();
    if (!quiet)
      std::cout << "run: grid " << cfg.grid_nx << "x" << cfg.grid_ny << "x" << cfg.grid_nt
                << " target " << cfg.target << " p=" << cfg.p << " delta=" << cfg.delta << "\n";

    StepHook hook;
    if (cfg.snapshot_every > 0) {
      hook = [&](long step_count, double, const MapState& state) {
        if (step_count % cfg.snapshot_every == 0)
          write_snapshot(out_dir / "snapshots" / ("step_" + std::to_string(step_count) + ".snap"),
                         state.components);
      };
    }
    auto [final, trace] = run(phi0, fp, hook);

    write_trace_csv(out_dir / "trace.csv", trace);
    write_snapshot(out_dir / "snapshots" / "step_0.snap", phi0.components);
    write_snapshot(out_dir / "snapshots" /
                       ("step_" + std::to_string(trace.accepted_steps) + ".snap"),
                   final.components);

    bool monotone = true;
    for (std::size_t r = 0; r + 1 < trace.rows.size(); ++r)
      if (trace.rows[r + 1].report.Ep_delta >
          trace.rows[r].report.Ep_delta * (1.0 + 1e-12))
        monotone = false;
    Verdict outcome{"run", monotone,
                    {{"termination", static_cast<double>(trace.termination)},
                     {"accepted_steps", static_cast<double>(trace.accepted_steps)},
                     {"final_Ep_delta", trace.rows.back().report.Ep_delta},
                     {"final_velocity_norm", trace.final_velocity_norm}},
                    {}};
    write_verdicts_csv(out_dir / "verdicts.csv", {outcome});

    std::ostringstream rep;
    rep << "termination: " << to_string(trace.termination) << "\n"
        << "accepted_steps: " << trace.accepted_steps << "\n"
        << "rejected_steps: " << trace.rejected_steps << "\n"
        << "final_time: " << fmt(trace.final_time) << "\n"
        << "final_velocity_norm: " << fmt(trace.final_velocity_norm) << "\n"
        << "dissipation_integral: " << fmt(trace.dissipation_integral) << "\n"
        << "final_Ep: " << fmt(trace.rows.back().report.Ep) << "\n"
        << "final_Ep_delta: " << fmt(trace.rows.back().report.Ep_delta) << "\n"
        << metadata_block(&cfg);
    write_text_atomic(out_dir / "report.txt", rep.str());

    if (!quiet)
      std::cout << "termination: " << to_string(trace.termination) << " after "
                << trace.accepted_steps << " steps, t=" << trace.final_time << "\n";
    if (!monotone) {
      std::cerr << "run: recorded energy increased (invariant violation)\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(int size, bool quiet, const std::filesystem::path& out_dir) {
  try {
    const std::vector<Verdict> verdicts = property_suite(size);
    bool all = true;
    for (const Verdict& v : verdicts) {
      all = all && v.pass;
      if (!quiet) std::cout << format_verdict(v) << "\n";
    }
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      write_verdicts_csv(out_dir / "verdicts.csv", verdicts);
    }
    if (!quiet) std::cout << (all ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "verify failed: " << e.what() << "\n";
    return 1;
  }
}

int cmd_study(const std::string& preset_or_config, bool quiet,
              const std::filesystem::path& out_dir) {
  try {
    std::vector<Verdict> verdicts;
    std::ostringstream rep;
    if (preset_or_config == "acceptance") {
      verdicts = flow_experiments();
      // delta-continuation summary on the nonpositive-curvature preset
      const GridSpec spec(16, 16, 16);
      const TargetChart chart = TargetChart::hyperbolic_ball(2);
      const MapState phi0 = random_map(spec, chart, 3.0, 1e-2, 30, 3);
      FlowParams fp;
      fp.p = 3.0;
      fp.dt0 = 1e-3;
      fp.t_max = 100.0;
      // tight stop so the stopping noise sits below the delta-to-delta
      // differences the report is meant to show
      fp.stop_tol = 1e-8;
      fp.record_every = 100;
      const ContinuationResult cont = delta_continuation(phi0, fp, {1e-1, 1e-2, 1e-3});
      rep << "delta continuation (1e-1, 1e-2, 1e-3), consecutive final-state L2 distances:\n";
      for (std::size_t i = 0; i < cont.consecutive_distances.size(); ++i)
        rep << "  d(" << fmt(cont.deltas[i]) << " -> " << fmt(cont.deltas[i + 1])
            << ") = " << fmt(cont.consecutive_distances[i]) << "\n";
    } else if (preset_or_config == "sphere-small-energy") {
      verdicts.push_back(experiment_small_energy_collapse());
    } else if (preset_or_config == "hyperbolic") {
      verdicts.push_back(experiment_nonpositive_curvature());
    } else {
      // anything else is a config path: a config-driven study is a single run
      RunConfig cfg = load_config(preset_or_config);
      if (!out_dir.empty()) cfg.out_dir = out_dir.string();
      return cmd_run(cfg, quiet);
    }
    bool all = true;
    for (const Verdict& v : verdicts) {
      all = all && v.pass;
      if (!quiet) std::cout << format_verdict(v) << "\n";
    }
    const std::filesystem::path dir = out_dir.empty() ? std::filesystem::path("study_out") : out_dir;
    std::filesystem::create_directories(dir);
    write_verdicts_csv(dir / "verdicts.csv", verdicts);
    std::ostringstream report;
    for (const Verdict& v : verdicts) report << format_verdict(v) << "\n";
    report << rep.str() << metadata_block(nullptr);
    write_text_atomic(dir / "report.txt", report.str());
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "study failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace subflow
