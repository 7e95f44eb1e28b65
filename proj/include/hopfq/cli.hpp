#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hopfq/json_io.hpp"

namespace hopfq {

enum ExitCode : int { exit_ok = 0, exit_verification = 1, exit_schema = 2, exit_budget = 3 };

// Appendix quantities for G_a,2 over F_p with K = H = G_a,1, one case per lambda.
io::Json appendix_document(std::int64_t p);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hopfq
