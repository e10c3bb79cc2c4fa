#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "olac/diagnostic.hpp"
#include "olac/record.hpp"
#include "olac/record_xml.hpp"
#include "olac/vocabulary.hpp"

namespace olac {

enum class Verdict { Conformant, ConformantWithWarnings, Nonconformant };

std::string_view to_string(Verdict verdict);

struct ConformanceReport {
    std::string context;  // file name or record identifier
    std::vector<Diagnostic> diagnostics;
    Verdict verdict = Verdict::Conformant;

    std::size_t errors() const;
    std::size_t warnings() const;
};

/// Recomputes the verdict from the diagnostics.
Verdict verdict_for(const std::vector<Diagnostic>& diagnostics);

/// Conformance rules:
///  - a code typed with an accepted vocabulary must be a term (error);
///  - a code typed with a third-party vocabulary should be a term (warning);
///  - language-typed codes must parse (error) and should be known (warning);
///  - W3C-DTF typed content must be a W3C date (error);
///  - a code with no type is flagged (warning).
/// `positions`, when given, supplies line/column per element.
ConformanceReport validate(const OlacRecord& record, const Profile& profile = Profile::builtin(),
                           std::string context = {}, std::span<const SourcePosition> positions = {});

/// Parse diagnostics followed by validation diagnostics.
ConformanceReport validate(const ParsedRecord& parsed, const Profile& profile = Profile::builtin(),
                           std::string context = {});

struct BatchSummary {
    std::size_t records = 0;
    std::size_t conformant = 0;
    std::size_t with_warnings = 0;
    std::size_t nonconformant = 0;
    std::size_t errors = 0;
    std::size_t warnings = 0;
    std::map<Rule, std::size_t> per_rule;

    void add(const ConformanceReport& report);
    void merge(const BatchSummary& other);

    friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

/// Validates every record, fanning out over `threads` workers (0 picks the
/// hardware concurrency). The summary does not depend on the thread count.
BatchSummary validate_batch(std::span<const OlacRecord> records, const Profile& profile = Profile::builtin(),
                            unsigned threads = 0);

std::string format_text(const ConformanceReport& report);
std::string format_tsv(const ConformanceReport& report);
std::string format_text(const BatchSummary& summary);

}  // namespace olac
