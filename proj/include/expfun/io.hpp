#pragma once

#include "expfun/dieudonne.hpp"
#include "expfun/hopf.hpp"

#include <stdexcept>
#include <string>

namespace expfun::io {

// malformed or inconsistent input documents
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// hopf-v1: deterministic, pretty-printed, newline-terminated
std::string dump_hopf(const hopf::HopfPresentation& h);
hopf::HopfPresentation parse_hopf(const std::string& text);

// dieu-v1
std::string dump_dieudonne(const dieu::DieudonneModule& m);
dieu::DieudonneModule parse_dieudonne(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace expfun::io
