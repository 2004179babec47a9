#pragma once

#include <string>
#include <vector>

#include "hypolab/common.hpp"

namespace hypolab::io {

// Comma-separated writer; numbers land as '%.17g' so re-runs with the same
// inputs reproduce files byte-for-byte.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const Vec& values);
    void add_row(const std::vector<std::string>& cells);

    std::string str() const;
    void save(const std::string& path) const;

    static std::string format(double v);

  private:
    std::size_t columns_;
    std::string body_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hypolab::io
