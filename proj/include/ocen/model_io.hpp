#pragma once

// Shared helpers for the versioned key/value model text format. Doubles are
// written with 17 significant digits so round-trips are bit-exact.

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace ocen::model_io {

std::string format_double(double v);
double parse_double(const std::string& s);

void write_scalar(std::ostream& os, const std::string& key, const std::string& value);
void write_scalar(std::ostream& os, const std::string& key, double value);
void write_scalar(std::ostream& os, const std::string& key, std::size_t value);
void write_vector(std::ostream& os, const std::string& key, const std::vector<double>& v);
void write_matrix(std::ostream& os, const std::string& key,
                  const std::vector<std::vector<double>>& m);

// Line-oriented reader over a serialized document. Keys are single tokens;
// expect_* throws std::runtime_error naming the offending key on mismatch.
class Reader {
 public:
  explicit Reader(const std::string& text);

  std::string expect_scalar(const std::string& key);  // rest of line after the key
  double expect_double(const std::string& key);
  std::size_t expect_size(const std::string& key);
  std::vector<double> expect_vector(const std::string& key);
  std::vector<std::vector<double>> expect_matrix(const std::string& key);

  // Peek at the key of the next nonempty line without consuming it.
  std::string peek_key();
  // Consume and return the remainder of the document from the current line.
  std::string take_rest();

 private:
  std::string next_line();
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

}  // namespace ocen::model_io
