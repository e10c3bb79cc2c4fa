#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olac/language_code.hpp"
#include "olac/record.hpp"

namespace olac {

inline constexpr std::string_view kRoleVocabulary = "role";
inline constexpr std::string_view kLinguisticTypeVocabulary = "linguistic-type";
inline constexpr std::string_view kDiscourseTypeVocabulary = "discourse-type";
inline constexpr std::string_view kLinguisticFieldVocabulary = "linguistic-field";
inline constexpr std::string_view kLanguageVocabulary = "language";

inline constexpr std::string_view kW3cDtfScheme = "W3C-DTF";

struct VocabTerm {
    std::string code;   // canonical spelling
    std::string label;  // human-readable form

    friend bool operator==(const VocabTerm&, const VocabTerm&) = default;
};

enum class VocabStatus { Accepted, ThirdParty };

std::string_view to_string(VocabStatus status);

/// Lookup key for vocabulary codes: ASCII-lowercased, '_' read as a space,
/// whitespace collapsed. "Interactive_Discourse" and "interactive discourse"
/// share a key.
std::string term_key(std::string_view code);

/// A closed list of legal code values.
class Vocabulary {
public:
    Vocabulary(std::string id, VocabStatus status) : id_(std::move(id)), status_(status) {}

    /// Definition file: a `vocab <id>` header line, then `code<TAB>label`
    /// lines. A line without a tab uses the code as its label.
    static Vocabulary parse(std::string_view content, VocabStatus status);

    const std::string& id() const { return id_; }
    VocabStatus status() const { return status_; }
    const std::vector<VocabTerm>& terms() const { return terms_; }

    /// Throws DuplicateId when two codes share a lookup key.
    void add(VocabTerm term);
    const VocabTerm* find(std::string_view code) const;

private:
    std::string id_;
    VocabStatus status_;
    std::vector<VocabTerm> terms_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Accepted and third-party vocabularies by id. Built once then read-only;
/// registering after startup needs external serialization.
class VocabularyRegistry {
public:
    static const VocabularyRegistry& builtin();

    /// Throws DuplicateId if the id is taken (including the reserved
    /// language vocabulary id).
    const Vocabulary& add(Vocabulary vocabulary);

    /// Registers a third-party vocabulary from definition-file content.
    /// Throws DuplicateId or ParseError.
    const Vocabulary& register_extension(std::string_view definition);
    const Vocabulary& register_extension_file(const std::string& path);

    const Vocabulary* find(std::string_view id) const;
    std::vector<std::string> ids() const;

private:
    std::map<std::string, std::shared_ptr<const Vocabulary>, std::less<>> vocabularies_;
};

/// Known language codes with their names. Membership is advisory: unknown
/// but well-formed codes stay legal.
class LanguageTable {
public:
    static LanguageTable parse(std::string_view content);
    static LanguageTable load(const std::string& path);
    static const LanguageTable& builtin();

    void add(const LanguageCode& code, std::string name);
    const std::string* name_of(const LanguageCode& code) const;
    bool contains(const LanguageCode& code) const { return name_of(code) != nullptr; }
    std::size_t size() const { return names_.size(); }

    /// Entries in file order.
    const std::vector<std::pair<LanguageCode, std::string>>& entries() const { return entries_; }

private:
    std::map<std::string, std::string, std::less<>> names_;  // key() -> name
    std::vector<std::pair<LanguageCode, std::string>> entries_;
};

/// Language name variants -> codes. Names are normalized identically on
/// load and on lookup.
class AliasTable {
public:
    /// `name<TAB>code` lines; names may repeat.
    static AliasTable parse(std::string_view content);
    static AliasTable load(const std::string& path);
    static const AliasTable& builtin();

    void add(std::string_view name, const LanguageCode& code);

    /// Codes sorted by key, without duplicates; empty when unknown.
    std::vector<LanguageCode> resolve(std::string_view name) const;

    /// (name as written, code) pairs in load order.
    const std::vector<std::pair<std::string, LanguageCode>>& entries() const { return entries_; }

private:
    std::map<std::string, std::vector<LanguageCode>, std::less<>> by_name_;
    std::vector<std::pair<std::string, LanguageCode>> entries_;
};

std::vector<LanguageCode> resolve_language_name(std::string_view name, const AliasTable& table);

/// ISO 639-1 codes paired with extension codes for the same language. Search
/// treats each pair as one facet value keyed by the ISO code.
class EquivalenceTable {
public:
    /// `iso<TAB>extension` lines.
    static EquivalenceTable parse(std::string_view content);
    static EquivalenceTable load(const std::string& path);
    static const EquivalenceTable& builtin();

    void add(const LanguageCode& iso, const LanguageCode& extension);

    /// Key of the equivalence class containing the code.
    std::string class_key(const LanguageCode& code) const;
    /// Every code key in the class, the representative first.
    std::vector<std::string> members(std::string_view class_key) const;

private:
    std::map<std::string, std::string, std::less<>> representative_;
    std::map<std::string, std::vector<std::string>, std::less<>> members_;
};

/// Everything a record is interpreted against: the refinement table, the
/// vocabularies and the language tables.
struct Profile {
    RefinementTable refinements;
    VocabularyRegistry vocabularies;
    LanguageTable languages;
    AliasTable aliases;
    EquivalenceTable equivalences;

    static const Profile& builtin();

    bool is_vocabulary(std::string_view id) const;

    /// Throws UnknownVocabulary or NotFound. The language vocabulary resolves
    /// codes through the language table.
    VocabTerm lookup_term(std::string_view vocab_id, std::string_view code) const;
    std::optional<VocabTerm> find_term(std::string_view vocab_id, std::string_view code) const;

    /// Human name for a language code, or nullptr.
    const std::string* language_name(const LanguageCode& code) const { return languages.name_of(code); }
    /// Name of the code's equivalence class representative or any member.
    std::string language_class_label(std::string_view class_key) const;
};

}  // namespace olac
