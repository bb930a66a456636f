#include "dupcut/newick.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <vector>

namespace dupcut {

namespace {

// Recursive descent; the cap keeps hostile inputs off the call stack.
constexpr int kMaxDepth = 10000;

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  char peek() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    return text_[pos_];
  }

  void expect(char c) {
    if (peek() != c)
      throw ParseError(std::string("expected '") + c + "', found '" + text_[pos_] + "'", pos_);
    ++pos_;
  }

  bool consume_if(char c) {
    if (at_end() || text_[pos_] != c) return false;
    ++pos_;
    return true;
  }

  std::string_view name() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Branch lengths are discarded; only the shape of the number is checked.
  void skip_number() {
    skip();
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      digits();
    }
    if (pos_ == start) throw ParseError("expected a branch length after ':'", pos_);
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '[') {
        const std::size_t open = pos_;
        while (pos_ < text_.size() && text_[pos_] != ']') ++pos_;
        if (pos_ >= text_.size()) throw ParseError("unterminated comment", open);
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Children lists are returned so the gene/species callers can enforce their
// own arity rules at the reported position. Both callbacks return builder
// node ids.
template <typename Leaf, typename Internal>
int parse_subtree(Scanner& sc, Leaf&& leaf, Internal&& internal, int depth = 0) {
  if (depth > kMaxDepth) throw ParseError("tree nesting exceeds the depth limit", sc.pos());
  if (sc.peek() == '(') {
    const std::size_t open = sc.pos();
    sc.expect('(');
    std::vector<int> children;
    children.push_back(parse_subtree(sc, leaf, internal, depth + 1));
    while (sc.consume_if(',')) children.push_back(parse_subtree(sc, leaf, internal, depth + 1));
    sc.expect(')');
    sc.name();  // internal node name, discarded
    if (sc.consume_if(':')) sc.skip_number();
    return internal(std::move(children), open);
  }
  const std::string_view label = sc.name();
  if (label.empty()) throw ParseError("expected a leaf label", sc.pos());
  if (sc.consume_if(':')) sc.skip_number();
  return leaf(label);
}

}  // namespace

GeneForest parse_newick_forest(std::string_view text) {
  Scanner sc(text);
  auto table = std::make_shared<GenomeTable>();
  std::vector<GeneTree> trees;
  GeneTreeBuilder builder;

  auto leaf = [&](std::string_view label) { return builder.add_leaf(table->intern(label)); };
  auto internal = [&](std::vector<int> children, std::size_t open) {
    if (children.size() != 2)
      throw ParseError("gene trees must be binary; vertex has " +
                           std::to_string(children.size()) + " children",
                       open);
    return builder.add_internal(children[0], children[1]);
  };

  while (!sc.at_end()) {
    const int root = parse_subtree(sc, leaf, internal);
    sc.expect(';');
    trees.push_back(builder.take(root));
  }
  if (trees.empty()) throw ParseError("empty input: no trees found", 0);
  return finalize_forest(std::move(trees), std::move(table));
}

SpeciesTree parse_newick_species(std::string_view text) {
  Scanner sc(text);
  auto table = std::make_shared<GenomeTable>();
  SpeciesTreeBuilder builder{table};

  auto leaf = [&](std::string_view label) { return builder.add_leaf(table->intern(label)); };
  auto internal = [&](std::vector<int> children, std::size_t open) {
    if (children.size() < 2)
      throw ParseError("species tree vertex needs at least two children", open);
    return builder.add_internal(std::move(children));
  };

  if (sc.at_end()) throw ParseError("empty input: no tree found", 0);
  const int root = parse_subtree(sc, leaf, internal);
  sc.expect(';');
  if (!sc.at_end()) throw ParseError("trailing content after species tree", sc.pos());
  try {
    return builder.finish(root);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

namespace {

void write_gene_subtree(const GeneTree& t, int v, const GenomeTable& genomes, std::string& out) {
  const GeneNode& n = t.arena[static_cast<std::size_t>(v)];
  if (n.is_leaf()) {
    out += genomes.name(n.leaf_genome);
    return;
  }
  out += '(';
  write_gene_subtree(t, n.children[0], genomes, out);
  out += ',';
  write_gene_subtree(t, n.children[1], genomes, out);
  out += ')';
}

void write_species_subtree(const SpeciesTree& s, int v, std::string& out) {
  const SpeciesNode& n = s.arena[static_cast<std::size_t>(v)];
  if (n.is_leaf()) {
    out += s.genomes->name(n.leaf_genome);
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ',';
    write_species_subtree(s, n.children[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_newick(const GeneTree& tree, const GenomeTable& genomes) {
  std::string out;
  write_gene_subtree(tree, tree.root, genomes, out);
  out += ';';
  return out;
}

std::string to_newick(const GeneForest& forest) {
  if (forest.trees.empty()) throw std::invalid_argument("cannot serialize an empty forest");
  std::string out;
  for (const GeneTree& t : forest.trees) {
    out += to_newick(t, *forest.genomes);
    out += '\n';
  }
  return out;
}

std::string to_newick(const SpeciesTree& species) {
  std::string out;
  write_species_subtree(species, species.root, out);
  out += ';';
  return out;
}

}  // namespace dupcut
