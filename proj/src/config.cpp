#include "lqdg/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <vector>

namespace lqdg {

namespace {

struct Entry {
  std::string key;
  std::string value;  // raw text, possibly spanning lines
  int line = 0;       // line the key appeared on
};

int bracket_balance(const std::string& text) {
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
  }
  return depth;
}

std::string strip(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

std::vector<Entry> split_entries(std::istream& in) {
  std::vector<Entry> entries;
  std::string line;
  int line_no = 0;
  int open_depth = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string text = strip(line);
    if (text.empty()) continue;
    if (open_depth > 0) {
      entries.back().value += " " + text;
      open_depth += bracket_balance(text);
      if (open_depth < 0) {
        throw ParseError(entries.back().key, line_no, "unbalanced ']'");
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError(text, line_no, "expected 'key = value'");
    }
    Entry entry;
    entry.key = strip(text.substr(0, eq));
    entry.value = strip(text.substr(eq + 1));
    entry.line = line_no;
    if (entry.key.empty()) {
      throw ParseError("", line_no, "missing key before '='");
    }
    open_depth = bracket_balance(entry.value);
    if (open_depth < 0) {
      throw ParseError(entry.key, line_no, "unbalanced ']'");
    }
    entries.push_back(std::move(entry));
  }
  if (open_depth > 0) {
    throw ParseError(entries.back().key, line_no, "unclosed '['");
  }
  return entries;
}

class ValueParser {
 public:
  ValueParser(const Entry& entry) : entry_(entry), text_(entry.value) {}

  double scalar() {
    const double v = number();
    end();
    return v;
  }

  std::vector<double> array() {
    std::vector<double> values = list();
    end();
    return values;
  }

  std::vector<std::vector<double>> matrix() {
    expect('[');
    std::vector<std::vector<double>> rows;
    skip_ws();
    if (!consume(']')) {
      rows.push_back(list());
      while (consume(',')) rows.push_back(list());
      expect(']');
    }
    end();
    return rows;
  }

 private:
  std::vector<double> list() {
    expect('[');
    std::vector<double> values;
    skip_ws();
    if (!consume(']')) {
      values.push_back(number());
      while (consume(',')) values.push_back(number());
      expect(']');
    }
    return values;
  }

  double number() {
    skip_ws();
    // from_chars takes no leading '+'.
    if (pos_ < text_.size() && text_[pos_] == '+') ++pos_;
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) {
      fail("expected a number");
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  void end() {
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after value");
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(entry_.key, entry_.line, what);
  }

  const Entry& entry_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

GameConfig parse_game_config(std::istream& in) {
  GameConfig config;
  std::map<std::string, bool> seen;
  bool have_a = false, have_x0 = false;

  for (const Entry& entry : split_entries(in)) {
    if (seen[entry.key]) {
      throw ParseError(entry.key, entry.line, "duplicate key");
    }
    seen[entry.key] = true;
    ValueParser parser(entry);
    if (entry.key == "a") {
      config.spec.a = parser.scalar();
      have_a = true;
    } else if (entry.key == "x0") {
      config.spec.x0 = parser.scalar();
      have_x0 = true;
    } else if (entry.key == "b") {
      config.spec.b = parser.array();
    } else if (entry.key == "q") {
      config.spec.q = parser.array();
    } else if (entry.key == "r") {
      config.spec.r = parser.array();
    } else if (entry.key == "mu") {
      config.mu = WeightVector{parser.array()};
    } else if (entry.key == "lambda") {
      config.lambda = CooperationMatrix{parser.matrix()};
    } else {
      throw ParseError(entry.key, entry.line, "unknown key");
    }
  }

  const auto require = [&](const char* key, bool present) {
    if (!present) {
      throw ParseError(key, 0, "required field missing from config");
    }
  };
  require("a", have_a);
  require("x0", have_x0);
  require("b", !config.spec.b.empty());
  require("q", !config.spec.q.empty());
  require("r", !config.spec.r.empty());
  return config;
}

GameConfig load_game_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  return parse_game_config(in);
}

Game make_game(const GameConfig& config) {
  Game game = config.mu ? validate_spec(config.spec, *config.mu)
                        : validate_spec(config.spec);
  if (config.lambda) {
    validate_cooperation(game, *config.lambda);
  }
  return game;
}

}  // namespace lqdg
