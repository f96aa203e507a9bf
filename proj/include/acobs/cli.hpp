#pragma once

#include "acobs/suite.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace acobs::cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// --help was given; what() is the help screen.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { text, csv, records };

struct RunConfig {
  std::string command;  // verify | scan | obstruct
  Descriptor scenario;
  SuiteConfig suite;
  Format format = Format::text;
  std::string out_path;      // empty: the `out` stream
  std::vector<double> eps;   // scan only: one run per value of the eps parameter
};

// Parses argv (argv[0] is the program name). Throws UsageError or HelpRequested.
RunConfig parse(const std::vector<std::string>& args);

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_obstruct(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse + dispatch, mapping every failure to an exit code
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acobs::cli
