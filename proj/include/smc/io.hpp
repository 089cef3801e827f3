#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "smc/hrlq.hpp"
#include "smc/model.hpp"

namespace smc {

class ParseError : public ValidationError {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

using Document = std::variant<SmcInstance, HrlqInstance>;

Document parse_document(std::string_view text);
SmcInstance parse_smc(std::string_view text);
HrlqInstance parse_hrlq(std::string_view text);

std::string serialize(const SmcInstance& inst);
std::string serialize(const HrlqInstance& inst);

enum class Optimality { Yes, No, Unknown };

std::string format_result(const SmcInstance& inst, const SolveResult& r, Optimality opt);
std::string format_result(const HrlqInstance& inst, const HrlqResult& r, Optimality opt);

// Reads `man woman` lines up to an optional `blocking:` line.
Matching parse_matching(const SmcInstance& inst, std::string_view text);
Assignment parse_assignment(const HrlqInstance& inst, std::string_view text);

std::string read_file(const std::string& path);

}  // namespace smc
