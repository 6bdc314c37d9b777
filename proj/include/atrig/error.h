#pragma once

#include <stdexcept>
#include <string>

namespace atrig {

// Every failure the library reports carries a short category string so the
// CLI can print a single machine-parsable line ("error[<category>] ...").
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

// Malformed input file content (bad TSV row, invalid parse, ...).
class IngestError : public Error {
 public:
  explicit IngestError(const std::string& what) : Error("ingest", what) {}
};

// Missing resources or out-of-range settings.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

// Data that is well-formed but unusable for the requested operation.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error("data", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace atrig
