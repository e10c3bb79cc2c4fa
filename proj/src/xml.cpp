#include "olac/xml.hpp"

#include <expat.h>

#include <algorithm>
#include <memory>

#include "olac/error.hpp"
#include "olac/text.hpp"

namespace olac::xml {

namespace {

constexpr char kSep = '\x1F';

struct ParseState {
    XML_Parser parser = nullptr;
    std::vector<Element*> stack;
    Element root;
    bool have_root = false;
    std::vector<std::pair<std::string, std::string>> scope;  // prefix -> uri
    std::string error;
};

void split_name(const XML_Char* raw, std::string& ns, std::string& local) {
    std::string_view name(raw);
    auto first = name.find(kSep);
    if (first == std::string_view::npos) {
        ns.clear();
        local = std::string(name);
        return;
    }
    ns = std::string(name.substr(0, first));
    auto second = name.find(kSep, first + 1);
    local = std::string(name.substr(first + 1, second == std::string_view::npos ? second : second - first - 1));
}

std::optional<QName> resolve_qname(const ParseState& st, std::string_view value) {
    value = text::trim(value);
    std::string_view prefix;
    std::string_view local = value;
    if (auto colon = value.find(':'); colon != std::string_view::npos) {
        prefix = value.substr(0, colon);
        local = value.substr(colon + 1);
    }
    for (auto it = st.scope.rbegin(); it != st.scope.rend(); ++it) {
        if (it->first == prefix) return QName{it->second, std::string(local)};
    }
    if (prefix.empty()) return QName{"", std::string(local)};
    if (prefix == "xml") return QName{std::string(kXmlNs), std::string(local)};
    return std::nullopt;
}

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
    auto* st = static_cast<ParseState*>(data);
    Element el;
    split_name(name, el.ns, el.local);
    el.line = static_cast<long>(XML_GetCurrentLineNumber(st->parser));
    el.column = static_cast<long>(XML_GetCurrentColumnNumber(st->parser)) + 1;
    for (int i = 0; attrs[i]; i += 2) {
        Attribute a;
        split_name(attrs[i], a.ns, a.local);
        a.value = attrs[i + 1];
        if (a.ns == kXsiNs && a.local == "type") a.resolved = resolve_qname(*st, a.value);
        el.attributes.push_back(std::move(a));
    }
    if (st->stack.empty()) {
        st->root = std::move(el);
        st->have_root = true;
        st->stack.push_back(&st->root);
    } else {
        auto& siblings = st->stack.back()->children;
        siblings.push_back(std::move(el));
        st->stack.push_back(&siblings.back());
    }
}

void XMLCALL on_end(void* data, const XML_Char*) {
    static_cast<ParseState*>(data)->stack.pop_back();
}

void XMLCALL on_chars(void* data, const XML_Char* s, int len) {
    auto* st = static_cast<ParseState*>(data);
    if (!st->stack.empty()) st->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

void XMLCALL on_ns_start(void* data, const XML_Char* prefix, const XML_Char* uri) {
    auto* st = static_cast<ParseState*>(data);
    st->scope.emplace_back(prefix ? prefix : "", uri ? uri : "");
}

void XMLCALL on_ns_end(void* data, const XML_Char* prefix) {
    auto* st = static_cast<ParseState*>(data);
    std::string p = prefix ? prefix : "";
    for (auto it = st->scope.rbegin(); it != st->scope.rend(); ++it) {
        if (it->first == p) {
            st->scope.erase(std::next(it).base());
            return;
        }
    }
}

void XMLCALL on_doctype(void* data, const XML_Char*, const XML_Char*, const XML_Char*, int) {
    auto* st = static_cast<ParseState*>(data);
    st->error = "DOCTYPE declarations are not accepted";
    XML_StopParser(st->parser, XML_FALSE);
}

struct ParserDeleter {
    void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

void canonical(const Element& el, std::string& out) {
    out += "<{" + el.ns + "}" + el.local;
    std::vector<std::pair<std::string, std::string>> attrs;
    for (const auto& a : el.attributes) {
        std::string value = text::collapse_whitespace(a.value);
        if (a.resolved) value = "{" + a.resolved->ns + "}" + a.resolved->local;
        attrs.emplace_back("{" + a.ns + "}" + a.local, std::move(value));
    }
    std::sort(attrs.begin(), attrs.end());
    for (const auto& [k, v] : attrs) out += " " + k + "=\"" + escape_attribute(v) + "\"";
    out += ">";
    auto t = text::collapse_whitespace(el.text);
    if (!t.empty()) out += escape_text(t);
    for (const auto& c : el.children) canonical(c, out);
    out += "</{" + el.ns + "}" + el.local + ">";
}

}  // namespace

const Attribute* Element::attribute(std::string_view n, std::string_view l) const {
    for (const auto& a : attributes) {
        if (a.ns == n && a.local == l) return &a;
    }
    return nullptr;
}

const Element* Element::child(std::string_view n, std::string_view l) const {
    for (const auto& c : children) {
        if (c.is(n, l)) return &c;
    }
    return nullptr;
}

Element parse_document(std::string_view bytes) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreateNS("UTF-8", kSep));
    if (!parser) throw FatalParse("cannot allocate XML parser");
    ParseState st;
    st.parser = parser.get();
    XML_SetUserData(st.parser, &st);
    XML_SetElementHandler(st.parser, on_start, on_end);
    XML_SetCharacterDataHandler(st.parser, on_chars);
    XML_SetNamespaceDeclHandler(st.parser, on_ns_start, on_ns_end);
    XML_SetStartDoctypeDeclHandler(st.parser, on_doctype);
    XML_SetParamEntityParsing(st.parser, XML_PARAM_ENTITY_PARSING_NEVER);
    XML_SetReturnNSTriplet(st.parser, XML_TRUE);

    auto status = XML_Parse(st.parser, bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
    if (status != XML_STATUS_OK || !st.error.empty() || !st.have_root) {
        std::string message = !st.error.empty() ? st.error
                              : status != XML_STATUS_OK
                                  ? std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(st.parser))
                                  : "document has no root element";
        throw FatalParse(message, static_cast<long>(XML_GetCurrentLineNumber(st.parser)),
                         static_cast<long>(XML_GetCurrentColumnNumber(st.parser)) + 1);
    }
    return std::move(st.root);
}

std::string canonicalize(const Element& root) {
    std::string out;
    canonical(root, out);
    return out;
}

std::string canonicalize(std::string_view bytes) { return canonicalize(parse_document(bytes)); }

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '\r': out += "&#13;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_attribute(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\t': out += "&#9;"; break;
            case '\n': out += "&#10;"; break;
            case '\r': out += "&#13;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

void Writer::declaration() { out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"; }

void Writer::indent() { out_.append(static_cast<std::size_t>(depth_) * 2, ' '); }

void Writer::start_tag(std::string_view qname, const Attributes& attributes) {
    indent();
    out_ += '<';
    out_ += qname;
    for (const auto& [k, v] : attributes) {
        out_ += ' ';
        out_ += k;
        out_ += "=\"";
        out_ += escape_attribute(v);
        out_ += '"';
    }
}

void Writer::open(std::string_view qname, const Attributes& attributes) {
    start_tag(qname, attributes);
    out_ += ">\n";
    stack_.emplace_back(qname);
    ++depth_;
}

void Writer::close() {
    --depth_;
    indent();
    out_ += "</" + stack_.back() + ">\n";
    stack_.pop_back();
}

void Writer::leaf(std::string_view qname, const Attributes& attributes,
                  const std::optional<std::string>& text) {
    start_tag(qname, attributes);
    if (!text) {
        out_ += "/>\n";
        return;
    }
    out_ += '>';
    out_ += escape_text(*text);
    out_ += "</";
    out_ += qname;
    out_ += ">\n";
}

}  // namespace olac::xml
