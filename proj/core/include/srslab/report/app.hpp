#pragma once

#include <filesystem>

#include "srslab/harness/suite.hpp"
#include "srslab/report/chart.hpp"
#include "srslab/report/spec.hpp"
#include "srslab/report/table.hpp"

namespace srslab::report {

// CLI entry point behind the `srslab` binary. Subcommands:
//   run      parse spec, execute the suite, emit tables and charts
//   replot   regenerate charts from stored run JSON, no retraining
//   validate parse and echo the materialized spec
// Exit codes: 0 success, 1 run failure(s) or I/O trouble, 2 usage/config error.
int run_main(int argc, const char* const* argv);

// Emission pieces, exposed for tests and replot.
ResultTable suite_table(const harness::SuiteResult& result);
std::vector<ChartSeries> chart_series_from_runs(const std::vector<harness::RunRecord>& runs,
                                                const std::vector<std::string>& variant_order);
void write_outputs(const ExperimentSpec& spec, const harness::SuiteResult& result,
                   const std::filesystem::path& out_dir);
void replot(const std::filesystem::path& out_dir);

}  // namespace srslab::report
