/**
 * Command execution: turns a validated configuration into summaries and
 * tables. This is the layer the public C API exposes.
 */
#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace qtel {

/// Rectangular numeric output with named columns.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct CommandResult {
  std::string summary_json;
  std::vector<Table> tables;
};

/// Runs one of: "simulate", "calibrate", "reproduce", "improved", "qubit".
CommandResult run_command(const RunConfig& config, const std::string& command);

CommandResult run_simulate(const RunConfig& config);
CommandResult run_calibrate(const RunConfig& config);
CommandResult run_reproduce(const RunConfig& config);
CommandResult run_improved(const RunConfig& config);
CommandResult run_qubit(const RunConfig& config);

/// Writes a table as CSV (header row, one line per row, '\n' endings).
void write_csv(const Table& table, const std::string& path);

/// CSV text of a table (used by the writer and the tests).
std::string table_to_csv(const Table& table);

}  // namespace qtel
