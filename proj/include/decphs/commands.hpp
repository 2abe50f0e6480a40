#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decphs {

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct SimulateOverrides {
  std::optional<double> dt;
  std::optional<double> t_final;
};

int cmd_mesh_check(const std::string& mesh_path, std::ostream& out, std::ostream& err);
// fault: "ROW,COL" flips the first entry of that Dirac block before verifying.
int cmd_dirac_verify(const std::string& scenario_path, const std::optional<std::string>& fault, std::ostream& out,
                     std::ostream& err);
int cmd_simulate(const std::string& scenario_path, const SimulateOverrides& o, const std::string& out_dir,
                 std::ostream& out, std::ostream& err);
int cmd_converge(const std::string& scenario_path, const std::vector<int>& n_list, const SimulateOverrides& o,
                 const std::string& out_dir, std::ostream& out, std::ostream& err);

std::vector<int> parse_n_list(const std::string& text);
std::pair<int, int> parse_block(const std::string& text);

}  // namespace decphs
