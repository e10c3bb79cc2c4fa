#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "olac/aggregator.hpp"
#include "olac/vocabulary.hpp"

namespace olac::search {

enum class Facet { SubjectLanguage, Language, LinguisticType, DiscourseType, LinguisticField, Role, Archive, DcType };

inline constexpr std::array<Facet, 8> kAllFacets = {Facet::SubjectLanguage, Facet::Language,
                                                     Facet::LinguisticType,  Facet::DiscourseType,
                                                     Facet::LinguisticField, Facet::Role,
                                                     Facet::Archive,         Facet::DcType};

std::string_view to_string(Facet facet);
/// Throws UnknownFacet.
Facet parse_facet(std::string_view id);

/// Conjunctive criteria; unset fields do not constrain. Language inputs take
/// a code or a name; vocabulary inputs take a code or a label.
struct Query {
    std::optional<std::string> text;
    std::optional<std::string> subject_language;
    std::optional<std::string> language;
    std::optional<std::string> linguistic_type;
    std::optional<std::string> discourse_type;
    std::optional<std::string> linguistic_field;
    std::optional<std::string> role;
    std::optional<std::string> name;  // creator/contributor, paired with role when both given
    std::optional<std::string> archive;
    std::optional<std::string> dc_type;

    bool empty() const;
};

struct ResultItem {
    catalog::EntryKey key;
    std::string title;
    std::string language;
    std::string type;
    std::string snippet;
    std::size_t score = 0;

    friend bool operator==(const ResultItem&, const ResultItem&) = default;
};

struct FacetCount {
    std::string value;
    std::string label;
    std::size_t count = 0;

    friend bool operator==(const FacetCount&, const FacetCount&) = default;
};

struct ResultSet {
    std::uint64_t snapshot = 0;
    std::size_t total = 0;
    std::vector<ResultItem> items;
    /// Per facet id, counts over the whole result set; facets without values
    /// are omitted.
    std::map<std::string, std::vector<FacetCount>> facets;

    friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

/// Normalized facet values of one record, as indexed. Language values are
/// equivalence-class keys; vocabulary values are canonical codes.
struct EntryFacets {
    std::map<Facet, std::vector<std::string>> values;  // per facet, one value per contributing element
    std::vector<std::pair<std::string, std::string>> people;  // (role code or "", normalized name)
};

EntryFacets extract_facets(const catalog::EntryKey& key, const OlacRecord& record, const Profile& profile);

/// Resolves a language criterion to equivalence-class keys: a known code
/// stands for itself; otherwise the input is looked up as a name; failing
/// that a well-formed code stands for itself. Empty when nothing matches.
std::vector<std::string> resolve_language_criterion(std::string_view input, const Profile& profile);
/// Canonical code for a vocabulary criterion (code or label), or the trimmed
/// input when the vocabulary has no such term.
std::string resolve_term_criterion(std::string_view vocab_id, std::string_view input, const Profile& profile);

/// Immutable inverted index over one catalog snapshot.
class Index {
public:
    Index() = default;
    static Index build(const catalog::Snapshot& snapshot, const Profile& profile = Profile::builtin());

    std::uint64_t snapshot_id() const { return snapshot_id_; }
    std::size_t size() const { return docs_.size(); }

    /// Throws EmptyQuery. Items are ranked by score descending, then key.
    ResultSet execute(const Query& query, std::size_t offset = 0,
                      std::optional<std::size_t> limit = std::nullopt) const;

    /// Values of a facet over all indexed entries, count descending then value.
    std::vector<FacetCount> facet_values(std::string_view facet_id) const;

    const ResultItem* item(const catalog::EntryKey& key) const;

private:
    using Postings = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (doc, hits), by doc

    struct Doc {
        ResultItem item;
        std::map<Facet, std::vector<std::string>> facet_values;  // distinct, sorted
    };

    std::string label(Facet facet, const std::string& value) const;
    std::vector<FacetCount> count(Facet facet, const std::vector<std::uint32_t>& docs) const;
    static Postings merge_union(const std::vector<const Postings*>& lists);

    std::uint64_t snapshot_id_ = 0;
    const Profile* profile_ = nullptr;
    std::vector<Doc> docs_;
    std::map<Facet, std::unordered_map<std::string, Postings>> facets_;
    std::unordered_map<std::string, Postings> people_;  // "role\x1fname" and "\x1fname"
    std::unordered_map<std::string, Postings> tokens_;
};

}  // namespace olac::search
