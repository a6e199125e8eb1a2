#ifndef COEFFSPEC_IO_HPP
#define COEFFSPEC_IO_HPP

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coeffspec/model.hpp"
#include "coeffspec/oracle.hpp"
#include "coeffspec/pds.hpp"
#include "coeffspec/spectrum.hpp"
#include "coeffspec/verify.hpp"

namespace coeffspec {

/// Rejected input text. Parsing is strict: the only accepted form is
/// the canonical one that serialize_* emits (sorted sigma pairs, blocks
/// ordered by least element, no unknown keys).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class Format { Text, Json, Dot };

ConcreteModel parse_model(const std::string& text);
AbstractPDS parse_pds(const std::string& text);

/// Dispatch on the "kind" field: "concrete" or "pds".
std::variant<ConcreteModel, AbstractPDS> parse_input(const std::string& text);

/// A spectrum report read back from its JSON form; chains are rebuilt
/// against the embedded point list.
struct ParsedSpectrum {
  std::vector<std::string> points;
  SpectrumDescription description;
};

ParsedSpectrum parse_spectrum(const std::string& text);

std::string serialize_model(const ConcreteModel& model);
std::string serialize_pds(const AbstractPDS& pds);

std::string render_validation(const ConcreteModel& model, const ValidationReport& report,
                              Format format);
/// Classification, induced system, ladder, dual-endomorphism witness.
std::string render_analysis(const ConcreteModel& model, Format format);
std::string render_spectrum(const AbstractPDS& pds, const DeltaLadder& ladder,
                            const SpectrumDescription& spec, Format format);
std::string render_oracle(const ConcreteModel& model, const OracleSpectrum& oracle,
                          const CoefficientAxiomReport& axioms, Format format);
std::string render_verify(const std::vector<TheoremReport>& reports, Format format);
std::string render_fuzz(const FuzzReport& report, Format format);

/// Whole file as a string; ParseError on IO failure.
std::string read_file(const std::string& path);

}  // namespace coeffspec

#endif  // COEFFSPEC_IO_HPP
