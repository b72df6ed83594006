#pragma once

#include <iosfwd>
#include "json.hpp"
#include <string>

#include "cmvscat/circle.hpp"
#include "cmvscat/classify.hpp"
#include "cmvscat/error.hpp"
#include "cmvscat/inverse.hpp"
#include "cmvscat/opuc.hpp"

namespace cmvscat::io {

// Malformed files and schema violations.
class FormatError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

nlohmann::json to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

// {"a_minus1":[re,im],"a":[[re,im],...]}
nlohmann::json to_json(const VerblunskySeq& seq);
VerblunskySeq seq_from_json(const nlohmann::json& j);
VerblunskySeq read_seq(const std::string& path);

// Rows "index,theta,re,im" at 17 significant digits; lines starting with '#' are comments.
void write_csv(std::ostream& out, const CircleFunction& f, const std::string& comment = "");
void write_csv(const std::string& path, const CircleFunction& f, const std::string& comment = "");
CircleFunction read_csv(std::istream& in);
CircleFunction read_csv(const std::string& path);

nlohmann::json to_json(const RecoveryReport& rep);
nlohmann::json to_json(const ClassReport& rep);

nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace cmvscat::io
