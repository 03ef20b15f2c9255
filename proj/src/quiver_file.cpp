#include "quiverhh/quiver_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "quiverhh/error.hpp"

namespace quiverhh {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& message) {
  throw Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message);
}

[[noreturn]] void fail(const Token& t, const std::string& message) { fail(t.line, t.column, message); }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '.' || c >= 0x80;
    if (!ok) return false;
  }
  return true;
}

const Token& identifier(const Token& t, std::string_view what) {
  if (!is_identifier(t.text)) fail(t, "invalid " + std::string(what) + " name '" + t.text + "'");
  return t;
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back(Token{std::string(line.substr(start, i - start)), line_no, start + 1});
  }
  return out;
}

struct PendingArrow {
  Token name, tail, head;
};

struct PendingRotation {
  Token vertex;
  std::vector<Token> darts;
};

constexpr std::string_view unicode_minus = "\xE2\x88\x92";

}  // namespace

QuiverFile parse_quiver_file(std::string_view text) {
  std::optional<Token> name;
  std::vector<Token> vertices;
  std::vector<PendingArrow> arrows;
  std::vector<PendingRotation> rotations;
  std::optional<Token> outer;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line_no;
    const auto tokens = tokenize(text.substr(pos, end - pos), line_no);
    pos = end + 1;
    if (tokens.empty()) continue;
    const Token& kw = tokens[0];
    const std::size_t args = tokens.size() - 1;
    if (kw.text == "quiver") {
      if (name) fail(kw, "duplicate quiver directive");
      if (args != 1) fail(kw, "quiver expects one name");
      name = identifier(tokens[1], "quiver");
    } else if (kw.text == "vertex") {
      if (args == 0) fail(kw, "vertex expects at least one name");
      for (std::size_t i = 1; i < tokens.size(); ++i) vertices.push_back(identifier(tokens[i], "vertex"));
    } else if (kw.text == "arrow") {
      if (args != 3) fail(kw, "arrow expects: arrow <id> <tail> <head>");
      arrows.push_back(PendingArrow{identifier(tokens[1], "arrow"), tokens[2], tokens[3]});
    } else if (kw.text == "rotation") {
      if (args == 0) fail(kw, "rotation expects a vertex");
      rotations.push_back(PendingRotation{tokens[1], {tokens.begin() + 2, tokens.end()}});
    } else if (kw.text == "outer") {
      if (outer) fail(kw, "duplicate outer directive");
      if (args != 1) fail(kw, "outer expects one face index");
      outer = tokens[1];
    } else {
      fail(kw, "unknown directive '" + kw.text + "'");
    }
  }

  std::vector<std::string> vertex_names;
  for (const auto& v : vertices) vertex_names.push_back(v.text);
  std::vector<ArrowSpec> specs;
  for (const auto& a : arrows) {
    for (const Token* end : {&a.tail, &a.head}) {
      bool known = false;
      for (const auto& v : vertex_names) known = known || v == end->text;
      if (!known) fail(*end, "arrow " + a.name.text + " references unknown vertex '" + end->text + "'");
    }
    specs.push_back(ArrowSpec{a.name.text, a.tail.text, a.head.text});
  }

  QuiverFile file;
  file.quiver = Quiver::create(name ? name->text : "unnamed", vertex_names, specs);
  const Quiver& q = *file.quiver;

  if (!rotations.empty()) {
    std::vector<std::vector<Dart>> order(q.vertex_count());
    std::vector<bool> seen(q.vertex_count(), false);
    for (const auto& rot : rotations) {
      const auto v = q.find_vertex(rot.vertex.text);
      if (!v) fail(rot.vertex, "rotation for unknown vertex '" + rot.vertex.text + "'");
      if (seen[v->index]) fail(rot.vertex, "second rotation for vertex '" + rot.vertex.text + "'");
      seen[v->index] = true;
      for (const auto& t : rot.darts) {
        std::string_view body = t.text;
        DartEnd end;
        if (body.ends_with('+')) {
          end = DartEnd::Tail;
          body.remove_suffix(1);
        } else if (body.ends_with('-')) {
          end = DartEnd::Head;
          body.remove_suffix(1);
        } else if (body.ends_with(unicode_minus)) {
          end = DartEnd::Head;
          body.remove_suffix(unicode_minus.size());
        } else {
          fail(t, "dart '" + t.text + "' must end in + or -");
        }
        const auto a = q.find_arrow(body);
        if (!a) fail(t, "dart '" + t.text + "' names unknown arrow '" + std::string(body) + "'");
        order[v->index].push_back(Dart{*a, end});
      }
    }
    file.rotation_order = std::move(order);
  }

  if (outer) {
    std::size_t value = 0;
    const auto* first = outer->text.data();
    const auto* last = first + outer->text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail(*outer, "outer expects a non-negative integer");
    file.outer = value;
  }
  return file;
}

QuiverFile load_quiver_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_quiver_file(buffer.str());
}

std::optional<RotationSystem> QuiverFile::rotation() const {
  const Quiver& q = *quiver;
  if (rotation_order) return RotationSystem(q, *rotation_order);
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (q.outgoing(VertexId{v}).size() + q.incoming(VertexId{v}).size() > 2) return std::nullopt;
  return RotationSystem::arbitrary(q);
}

std::string serialize_quiver_file(const QuiverFile& file) {
  const Quiver& q = *file.quiver;
  std::string out = "quiver " + q.name() + "\n";
  if (q.vertex_count() > 0) {
    out += "vertex";
    for (std::size_t v = 0; v < q.vertex_count(); ++v) out += " " + q.vertex_name(VertexId{v});
    out += "\n";
  }
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow& a = q.arrow(ArrowId{k});
    out += "arrow " + a.name + " " + q.vertex_name(a.tail) + " " + q.vertex_name(a.head) + "\n";
  }
  if (file.rotation_order) {
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      out += "rotation " + q.vertex_name(VertexId{v});
      for (const Dart& d : (*file.rotation_order)[v])
        out += " " + q.arrow(d.arrow).name + (d.end == DartEnd::Tail ? "+" : "-");
      out += "\n";
    }
  }
  if (file.outer) out += "outer " + std::to_string(*file.outer) + "\n";
  return out;
}

}  // namespace quiverhh
