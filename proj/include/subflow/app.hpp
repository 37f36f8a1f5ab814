// CLI entry points. All file output goes through write-to-temp-then-rename
// so no artifact is ever left partially written.
#pragma once

#include <filesystem>
#include <string>

#include "subflow/config.hpp"
#include "subflow/flow.hpp"
#include "subflow/verification.hpp"

namespace subflow {

int cmd_run(const RunConfig& cfg, bool quiet);
int cmd_verify(int size, bool quiet, const std::filesystem::path& out_dir);
int cmd_study(const std::string& preset_or_config, bool quiet,
              const std::filesystem::path& out_dir);

// trace.csv: one row per record, columns
// step,time,Ep,Ep_delta,sup_grad,sup_T,Ln1_g,dissipation
void write_trace_csv(const std::filesystem::path& path, const FlowTrace& trace);
void write_verdicts_csv(const std::filesystem::path& path, const std::vector<Verdict>& verdicts);

// run metadata recorded with every output set
std::string metadata_block(const RunConfig* cfg);

}  // namespace subflow
