// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
// Hand-written parser for the textual LLVM IR subset needed for feature
// counting. Full grammar fidelity is a non-goal: the parser recovers the
// function/block/instruction structure, CFG edges, and the operand shapes
// the counters look at, and keeps everything else as opaque text.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "awareopt/ir_features.hpp"

namespace aware::ir {

namespace {

const std::unordered_set<std::string_view> kTerminators = {
    "ret",     "br",       "switch",      "indirectbr", "invoke",
    "callbr",  "resume",   "unreachable", "cleanupret", "catchret",
    "catchswitch"};

const std::unordered_set<std::string_view> kBinaryOps = {
    "add",  "fadd", "sub",  "fsub", "mul", "fmul", "udiv", "sdiv", "fdiv",
    "urem", "srem", "frem", "shl",  "lshr", "ashr", "and",  "or",   "xor"};

const std::unordered_set<std::string_view> kUnaryInsts = {
    "alloca",   "load",     "trunc",       "zext",         "sext",
    "fptrunc",  "fpext",    "fptoui",      "fptosi",       "uitofp",
    "sitofp",   "ptrtoint", "inttoptr",    "bitcast",      "addrspacecast",
    "extractvalue", "freeze", "va_arg",    "fneg"};

const std::unordered_set<std::string_view> kMemoryInsts = {
    "load", "store", "alloca", "getelementptr",
    "call", "invoke", "cmpxchg", "atomicrmw"};

// Mnemonics that can head a parenthesized constant expression.
const std::unordered_set<std::string_view> kConstExprOps = {
    "getelementptr", "bitcast", "inttoptr", "ptrtoint", "addrspacecast",
    "trunc", "zext", "sext", "fptrunc", "fpext", "fptoui", "fptosi",
    "uitofp", "sitofp", "select", "icmp", "fcmp", "extractelement",
    "insertelement", "shufflevector", "extractvalue", "insertvalue",
    "add", "sub", "mul", "shl", "lshr", "ashr", "and", "or", "xor"};

// Words allowed between a constant-expression head and its '('.
const std::unordered_set<std::string_view> kConstExprModifiers = {
    "inbounds", "nsw", "nuw", "nneg", "exact", "samesign",
    "eq", "ne", "ugt", "uge", "ult", "ule", "sgt", "sge", "slt", "sle",
    "oeq", "ogt", "oge", "olt", "ole", "one", "ord", "ueq", "une", "uno"};

const std::unordered_map<std::string_view, Opcode> kOpcodeNames = {
    {"add", Opcode::kAdd},
    {"alloca", Opcode::kAlloca},
    {"and", Opcode::kAnd},
    {"ashr", Opcode::kAShr},
    {"bitcast", Opcode::kBitCast},
    {"br", Opcode::kBr},
    {"call", Opcode::kCall},
    {"getelementptr", Opcode::kGetElementPtr},
    {"icmp", Opcode::kICmp},
    {"load", Opcode::kLoad},
    {"lshr", Opcode::kLShr},
    {"mul", Opcode::kMul},
    {"or", Opcode::kOr},
    {"phi", Opcode::kPhi},
    {"ret", Opcode::kRet},
    {"sext", Opcode::kSExt},
    {"select", Opcode::kSelect},
    {"shl", Opcode::kShl},
    {"store", Opcode::kStore},
    {"sub", Opcode::kSub},
    {"trunc", Opcode::kTrunc},
    {"xor", Opcode::kXor},
    {"zext", Opcode::kZExt},
};

struct Token {
  enum class Kind {
    kWord,
    kIntLit,
    kFloatLit,
    kRegister,  // %name, text holds the name without % or quotes
    kGlobal,    // @name
    kMetaRef,   // !name / !0
    kAttrRef,   // #0
    kString,    // "..." (including c"...")
    kPunct,
  };

  Kind kind;
  std::string text;
  long long int_value = 0;
  int column = 0;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '-' || c == '$';
}

// Reads a quoted string starting at text[i] == '"'. Returns contents.
std::string read_quoted(std::string_view text, std::size_t& i) {
  std::string out;
  ++i;  // opening quote
  while (i < text.size() && text[i] != '"') {
    if (text[i] == '\\' && i + 1 < text.size()) {
      out += text[i];
      out += text[i + 1];
      i += 2;
    } else {
      out += text[i++];
    }
  }
  if (i < text.size()) ++i;  // closing quote
  return out;
}

long long parse_int_saturating(const std::string& digits) {
  errno = 0;
  long long v = std::strtoll(digits.c_str(), nullptr, 10);
  if (errno == ERANGE) {
    return digits[0] == '-' ? std::numeric_limits<long long>::min()
                            : std::numeric_limits<long long>::max();
  }
  return v;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (c == '"') {
      tokens.push_back({Token::Kind::kString, read_quoted(text, i), 0, col});
      continue;
    }
    if (c == '%' || c == '@') {
      Token::Kind kind = c == '%' ? Token::Kind::kRegister : Token::Kind::kGlobal;
      ++i;
      std::string name;
      if (i < text.size() && text[i] == '"') {
        name = read_quoted(text, i);
      } else {
        while (i < text.size() && is_word_char(text[i])) name += text[i++];
      }
      tokens.push_back({kind, std::move(name), 0, col});
      continue;
    }
    if (c == '!') {
      ++i;
      std::string name;
      if (i < text.size() && text[i] == '"') {
        name = read_quoted(text, i);
      } else {
        while (i < text.size() && is_word_char(text[i])) name += text[i++];
      }
      tokens.push_back({Token::Kind::kMetaRef, std::move(name), 0, col});
      continue;
    }
    if (c == '#') {
      ++i;
      std::string name;
      while (i < text.size() && is_word_char(text[i])) name += text[i++];
      tokens.push_back({Token::Kind::kAttrRef, std::move(name), 0, col});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::string lit;
      if (c == '-') lit += text[i++];
      while (i < text.size() && is_word_char(text[i])) lit += text[i++];
      bool is_float =
          lit.find('.') != std::string::npos ||
          lit.find('e') != std::string::npos ||
          lit.find('E') != std::string::npos ||
          lit.find('x') != std::string::npos ||
          lit.find('X') != std::string::npos;
      if (!is_float &&
          std::all_of(lit.begin() + (lit[0] == '-' ? 1 : 0), lit.end(),
                      [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
        tokens.push_back(
            {Token::Kind::kIntLit, lit, parse_int_saturating(lit), col});
      } else {
        tokens.push_back({Token::Kind::kFloatLit, std::move(lit), 0, col});
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      std::string word;
      while (i < text.size() && is_word_char(text[i])) word += text[i++];
      // Byte string constants print as c"...".
      if (word == "c" && i < text.size() && text[i] == '"') {
        tokens.push_back({Token::Kind::kString, read_quoted(text, i), 0, col});
        continue;
      }
      tokens.push_back({Token::Kind::kWord, std::move(word), 0, col});
      continue;
    }
    tokens.push_back({Token::Kind::kPunct, std::string(1, c), 0, col});
    ++i;
  }
  return tokens;
}

// Strips a ';' comment, respecting string quoting.
std::string strip_comment(std::string_view line) {
  std::string out;
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '"' ) in_string = !in_string;
    if (c == '\\' && in_string && i + 1 < line.size()) {
      out += c;
      out += line[++i];
      continue;
    }
    if (c == ';' && !in_string) break;
    out += c;
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int bracket_delta(std::string_view text) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\' && in_string) {
      ++i;
      continue;
    }
    if (c == '"') in_string = !in_string;
    if (in_string) continue;
    if (c == '[') ++depth;
    if (c == ']') --depth;
  }
  return depth;
}

std::optional<unsigned> int_type_width(const std::string& word) {
  if (word.size() < 2 || word[0] != 'i') return std::nullopt;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(word[i]))) return std::nullopt;
  }
  return static_cast<unsigned>(std::strtoul(word.c_str() + 1, nullptr, 10));
}

bool is_type_start_word(const std::string& w) {
  if (int_type_width(w)) return true;
  static const std::unordered_set<std::string_view> kTypes = {
      "void",  "half",  "bfloat", "float",    "double", "fp128",
      "x86_fp80", "ppc_fp128", "x86_mmx", "ptr", "label", "token",
      "metadata", "opaque"};
  return kTypes.count(w) > 0;
}

std::size_t skip_balanced(const std::vector<Token>& toks, std::size_t open,
                          const char* open_c, const char* close_c) {
  int depth = 0;
  std::size_t i = open;
  for (; i < toks.size(); ++i) {
    if (toks[i].kind == Token::Kind::kPunct) {
      if (toks[i].text == open_c) ++depth;
      if (toks[i].text == close_c && --depth == 0) return i + 1;
    }
  }
  return i;
}

// Consumes one type starting at `i`. Handles iN/word scalars, %named,
// [..], <..>, {..} composites, pointer stars, and function-type parens.
std::size_t skip_type(const std::vector<Token>& toks, std::size_t i) {
  if (i >= toks.size()) return i;
  const Token& t = toks[i];
  if (t.kind == Token::Kind::kPunct) {
    if (t.text == "[") {
      i = skip_balanced(toks, i, "[", "]");
    } else if (t.text == "<") {
      i = skip_balanced(toks, i, "<", ">");
    } else if (t.text == "{") {
      i = skip_balanced(toks, i, "{", "}");
    } else {
      return i;
    }
  } else if (t.kind == Token::Kind::kWord || t.kind == Token::Kind::kRegister) {
    ++i;
  } else {
    return i;
  }
  // Suffixes: pointer stars, addrspace, function-type parameter lists.
  while (i < toks.size()) {
    if (toks[i].kind == Token::Kind::kPunct && toks[i].text == "*") {
      ++i;
    } else if (toks[i].kind == Token::Kind::kWord && toks[i].text == "addrspace" &&
               i + 1 < toks.size() && toks[i + 1].kind == Token::Kind::kPunct &&
               toks[i + 1].text == "(") {
      i = skip_balanced(toks, i + 1, "(", ")");
    } else if (toks[i].kind == Token::Kind::kPunct && toks[i].text == "(") {
      i = skip_balanced(toks, i, "(", ")");
    } else {
      break;
    }
  }
  return i;
}

// Call-site modifier words that may precede the return type.
bool is_call_modifier(const std::string& w) {
  static const std::unordered_set<std::string_view> kMods = {
      "ccc", "fastcc", "coldcc", "tailcc", "swiftcc", "swifttailcc",
      "cfguard_checkcc", "webkit_jscc", "anyregcc", "preserve_mostcc",
      "preserve_allcc", "cxx_fast_tlscc", "x86_stdcallcc", "x86_fastcallcc",
      "arm_apcscc", "arm_aapcscc", "zeroext", "signext", "inreg", "noalias",
      "nonnull", "noundef", "sret", "inalloca", "align", "dereferenceable",
      "dereferenceable_or_null", "range"};
  return kMods.count(w) > 0;
}

struct LineRecord {
  std::string text;
  int line_no;
};

class ModuleParser {
 public:
  ModuleParser(std::string_view ir_text, std::string source_name)
      : source_name_(std::move(source_name)) {
    std::size_t start = 0;
    int line_no = 1;
    while (start <= ir_text.size()) {
      std::size_t end = ir_text.find('\n', start);
      if (end == std::string_view::npos) end = ir_text.size();
      std::string stripped =
          trim(strip_comment(ir_text.substr(start, end - start)));
      if (!stripped.empty()) lines_.push_back({std::move(stripped), line_no});
      if (end == ir_text.size()) break;
      start = end + 1;
      ++line_no;
    }
  }

  IrModule parse() {
    IrModule module;
    module.source_name = source_name_;
    while (pos_ < lines_.size()) {
      const LineRecord& line = lines_[pos_];
      if (starts_with_word(line.text, "define")) {
        module.functions.push_back(parse_define());
      } else if (starts_with_word(line.text, "declare")) {
        IrFunction fn;
        fn.name = find_function_name(line);
        fn.is_external = true;
        module.functions.push_back(std::move(fn));
        ++pos_;
      } else {
        ++pos_;  // globals, metadata, target lines, attributes, type defs
      }
    }
    return module;
  }

 private:
  static bool starts_with_word(const std::string& text, std::string_view word) {
    if (text.size() < word.size()) return false;
    if (text.compare(0, word.size(), word) != 0) return false;
    return text.size() == word.size() ||
           !is_word_char(text[word.size()]);
  }

  std::string find_function_name(const LineRecord& line) const {
    std::vector<Token> toks = tokenize(line.text);
    for (const Token& t : toks) {
      if (t.kind == Token::Kind::kGlobal) return t.text;
    }
    throw ParseError("missing function name", line.line_no, 1);
  }

  IrFunction parse_define() {
    const LineRecord& head = lines_[pos_];
    IrFunction fn;
    fn.name = find_function_name(head);
    if (head.text.back() != '{') {
      throw ParseError("expected '{' after function signature", head.line_no,
                       static_cast<int>(head.text.size()));
    }
    ++pos_;

    std::vector<IrBasicBlock> blocks;
    IrBasicBlock current;
    bool have_block = false;
    bool body_closed = false;

    auto close_block = [&](int line_no) {
      if (!have_block) return;
      if (current.instructions.empty() ||
          !current.instructions.back().is_terminator) {
        throw ParseError("block '" + current.label + "' has no terminator",
                         line_no, 1);
      }
      blocks.push_back(std::move(current));
      current = IrBasicBlock{};
      have_block = false;
    };

    while (pos_ < lines_.size()) {
      LineRecord line = lines_[pos_];
      if (line.text == "}") {
        close_block(line.line_no);
        ++pos_;
        body_closed = true;
        break;
      }
      if (auto label = parse_label_line(line.text)) {
        close_block(line.line_no);
        current.label = *label;
        have_block = true;
        ++pos_;
        continue;
      }
      // Instruction. Join continuation lines first.
      std::string text = collect_instruction_text(line);
      if (!have_block) {
        if (!blocks.empty()) {
          throw ParseError("instruction after terminator outside a block",
                           line.line_no, 1);
        }
        current.label = entry_label(fn.name);
        have_block = true;
      }
      if (!current.instructions.empty() &&
          current.instructions.back().is_terminator) {
        throw ParseError("instruction after terminator", line.line_no, 1);
      }
      current.instructions.push_back(parse_instruction(text, line.line_no));
    }
    if (!body_closed) {
      int last_line = lines_.empty() ? 1 : lines_.back().line_no;
      throw ParseError("unterminated function body for @" + fn.name, last_line,
                       1);
    }

    fn.blocks = std::move(blocks);
    link_cfg(fn);
    return fn;
  }

  static std::string entry_label(const std::string& fn_name) {
    // Clang prints the entry block of -O0 output without a label. The entry
    // block can never be a branch target, so a synthetic name is safe.
    return "entry@" + fn_name;
  }

  static std::optional<std::string> parse_label_line(const std::string& text) {
    std::vector<Token> toks = tokenize(text);
    if (toks.size() < 2) return std::nullopt;
    if (toks[1].kind != Token::Kind::kPunct || toks[1].text != ":")
      return std::nullopt;
    if (toks[0].kind == Token::Kind::kWord ||
        toks[0].kind == Token::Kind::kIntLit ||
        toks[0].kind == Token::Kind::kString) {
      if (toks.size() != 2) return std::nullopt;
      return toks[0].text;
    }
    return std::nullopt;
  }

  std::string collect_instruction_text(const LineRecord& first) {
    std::string text = first.text;
    ++pos_;
    // Bracketed case lists (switch, indirectbr) may span lines.
    int depth = bracket_delta(text);
    while (depth > 0 && pos_ < lines_.size()) {
      text += " " + lines_[pos_].text;
      depth = bracket_delta(text);
      ++pos_;
    }
    // invoke/callbr print their destination clause on a continuation line.
    auto needs_clause = [&](std::string_view mnemonic, std::string_view word) {
      return (text.find(mnemonic) != std::string::npos) &&
             text.find(word) == std::string::npos;
    };
    std::vector<Token> toks = tokenize(text);
    std::size_t m = mnemonic_index(toks);
    if (m < toks.size() && toks[m].kind == Token::Kind::kWord) {
      const std::string& op = toks[m].text;
      if ((op == "invoke" && needs_clause("invoke", "unwind")) ||
          (op == "callbr" && needs_clause("callbr", "to"))) {
        while (pos_ < lines_.size() && lines_[pos_].text != "}") {
          text += " " + lines_[pos_].text;
          ++pos_;
          if (text.find(op == "invoke" ? "unwind" : "to") != std::string::npos)
            break;
        }
      }
      if (op == "landingpad") {
        // Clause lines follow the instruction head.
        while (pos_ < lines_.size()) {
          const std::string& next = lines_[pos_].text;
          if (starts_with_word(next, "cleanup") ||
              starts_with_word(next, "catch") ||
              starts_with_word(next, "filter")) {
            text += " " + next;
            ++pos_;
          } else {
            break;
          }
        }
      }
    }
    return text;
  }

  static std::size_t mnemonic_index(const std::vector<Token>& toks) {
    std::size_t i = 0;
    if (i + 1 < toks.size() &&
        (toks[i].kind == Token::Kind::kRegister) &&
        toks[i + 1].kind == Token::Kind::kPunct && toks[i + 1].text == "=") {
      i += 2;
    }
    // tail/musttail/notail prefixes.
    if (i < toks.size() && toks[i].kind == Token::Kind::kWord &&
        (toks[i].text == "tail" || toks[i].text == "musttail" ||
         toks[i].text == "notail")) {
      ++i;
    }
    return i;
  }

  IrInstruction parse_instruction(const std::string& text, int line_no) const {
    std::vector<Token> toks = tokenize(text);
    std::size_t m = mnemonic_index(toks);
    if (m >= toks.size() || toks[m].kind != Token::Kind::kWord) {
      throw ParseError("expected instruction mnemonic", line_no,
                       toks.empty() ? 1 : toks[0].column);
    }

    IrInstruction inst;
    inst.opcode_name = toks[m].text;
    auto it = kOpcodeNames.find(inst.opcode_name);
    inst.opcode = it == kOpcodeNames.end() ? Opcode::kOther : it->second;
    inst.is_terminator = kTerminators.count(inst.opcode_name) > 0;

    scan_operands(toks, m, inst);

    if (inst.opcode == Opcode::kBr) {
      inst.is_unconditional_br =
          m + 1 < toks.size() && toks[m + 1].kind == Token::Kind::kWord &&
          toks[m + 1].text == "label";
    }
    if (inst.opcode == Opcode::kCall) {
      analyze_call(toks, m, inst);
    }
    if (inst.opcode == Opcode::kPhi) {
      analyze_phi(toks, m, inst);
    }
    if (inst.is_terminator) {
      for (std::size_t i = m; i + 1 < toks.size(); ++i) {
        if (toks[i].kind == Token::Kind::kWord && toks[i].text == "label" &&
            toks[i + 1].kind == Token::Kind::kRegister) {
          inst.successor_labels.push_back(toks[i + 1].text);
        }
      }
    }
    return inst;
  }

  // Walks the token stream after the mnemonic and collects value operands.
  // Tracks the nearest preceding integer type to give constants a width.
  static void scan_operands(const std::vector<Token>& toks, std::size_t m,
                            IrInstruction& inst) {
    const std::string& op = inst.opcode_name;
    // phi/switch/indirectbr/etc. keep real operands inside brackets.
    bool brackets_hold_operands =
        op == "phi" || op == "switch" || op == "indirectbr" ||
        op == "callbr" || op == "catchswitch" || op == "landingpad";

    unsigned last_int_width = 0;
    bool after_label_kw = false;
    for (std::size_t i = m + 1; i < toks.size(); ++i) {
      const Token& t = toks[i];
      switch (t.kind) {
        case Token::Kind::kWord: {
          if (auto w = int_type_width(t.text)) {
            last_int_width = *w;
            break;
          }
          if (t.text == "label") {
            after_label_kw = true;
            continue;
          }
          if (t.text == "align" || t.text == "addrspace" ||
              t.text == "dereferenceable" ||
              t.text == "dereferenceable_or_null") {
            // Swallow the following literal / parenthesized literal.
            if (i + 1 < toks.size() &&
                toks[i + 1].kind == Token::Kind::kIntLit) {
              ++i;
            } else if (i + 1 < toks.size() &&
                       toks[i + 1].kind == Token::Kind::kPunct &&
                       toks[i + 1].text == "(") {
              i = skip_balanced(toks, i + 1, "(", ")") - 1;
            }
            break;
          }
          if (t.text == "true" || t.text == "false") {
            inst.operands.push_back(
                {Operand::Kind::kConstInt, 1, t.text == "true" ? 1LL : 0LL,
                 t.text});
            break;
          }
          if (t.text == "null" || t.text == "undef" || t.text == "poison" ||
              t.text == "zeroinitializer" || t.text == "none") {
            inst.operands.push_back(
                {Operand::Kind::kConstOther, 0, 0, t.text});
            break;
          }
          // Nested constant expression: opcode word (+ modifiers) then '('.
          if (kConstExprOps.count(t.text)) {
            std::size_t j = i + 1;
            while (j < toks.size() && toks[j].kind == Token::Kind::kWord &&
                   kConstExprModifiers.count(toks[j].text)) {
              ++j;
            }
            if (j < toks.size() && toks[j].kind == Token::Kind::kPunct &&
                toks[j].text == "(") {
              i = skip_balanced(toks, j, "(", ")") - 1;
              inst.operands.push_back(
                  {Operand::Kind::kConstOther, 0, 0, t.text + "(...)"});
            }
          }
          break;
        }
        case Token::Kind::kIntLit: {
          // Array/vector length position: "[4 x i32]" / "<4 x i32>".
          bool next_is_x = i + 1 < toks.size() &&
                           toks[i + 1].kind == Token::Kind::kWord &&
                           toks[i + 1].text == "x";
          if (next_is_x) break;
          inst.operands.push_back(
              {Operand::Kind::kConstInt, last_int_width, t.int_value, t.text});
          break;
        }
        case Token::Kind::kFloatLit:
          inst.operands.push_back({Operand::Kind::kConstOther, 0, 0, t.text});
          break;
        case Token::Kind::kRegister:
          if (after_label_kw) {
            after_label_kw = false;
            break;
          }
          inst.operands.push_back({Operand::Kind::kRegister, 0, 0, t.text});
          break;
        case Token::Kind::kGlobal:
          inst.operands.push_back({Operand::Kind::kGlobal, 0, 0, t.text});
          break;
        case Token::Kind::kPunct: {
          if (!brackets_hold_operands &&
              (t.text == "[" || t.text == "<" || t.text == "{")) {
            const char* close = t.text == "[" ? "]" : (t.text == "<" ? ">" : "}");
            std::size_t end = skip_balanced(toks, i, t.text.c_str(), close);
            // Type groups ("[4 x i32]") vanish; aggregate literals are a
            // single constant operand, matching the in-memory operand model.
            bool is_type_group = i + 2 < toks.size() &&
                                 toks[i + 1].kind == Token::Kind::kIntLit &&
                                 toks[i + 2].kind == Token::Kind::kWord &&
                                 (toks[i + 2].text == "x" ||
                                  toks[i + 2].text == "vscale");
            bool is_struct_type = t.text == "{" && struct_group_is_type(toks, i, end);
            if (!is_type_group && !is_struct_type) {
              inst.operands.push_back(
                  {Operand::Kind::kConstOther, 0, 0, t.text + "...)"});
            }
            i = end - 1;
          }
          break;
        }
        default:
          break;
      }
      after_label_kw = false;
    }
  }

  // A brace group with only type tokens inside is a struct type, not an
  // aggregate constant.
  static bool struct_group_is_type(const std::vector<Token>& toks,
                                   std::size_t open, std::size_t end) {
    for (std::size_t i = open + 1; i + 1 < end; ++i) {
      const Token& t = toks[i];
      if (t.kind == Token::Kind::kIntLit || t.kind == Token::Kind::kFloatLit ||
          t.kind == Token::Kind::kRegister || t.kind == Token::Kind::kGlobal ||
          t.kind == Token::Kind::kString) {
        return false;
      }
      if (t.kind == Token::Kind::kWord && !is_type_start_word(t.text) &&
          t.text != "x" && t.text != "vscale") {
        return false;
      }
    }
    return true;
  }

  static void analyze_call(const std::vector<Token>& toks, std::size_t m,
                           IrInstruction& inst) {
    std::size_t i = m + 1;
    // Skip fast-math flags, calling conventions, and return attributes.
    while (i < toks.size() && toks[i].kind == Token::Kind::kWord &&
           !is_type_start_word(toks[i].text)) {
      if (is_call_modifier(toks[i].text)) {
        if (toks[i].text == "align" && i + 1 < toks.size() &&
            toks[i + 1].kind == Token::Kind::kIntLit) {
          ++i;
        }
        ++i;
        continue;
      }
      static const std::unordered_set<std::string_view> kFmf = {
          "fast", "nnan", "ninf", "nsz", "arcp", "contract", "afn", "reassoc"};
      if (kFmf.count(toks[i].text)) {
        ++i;
        continue;
      }
      break;
    }
    if (i >= toks.size()) return;
    if (toks[i].kind == Token::Kind::kWord) {
      if (auto w = int_type_width(toks[i].text)) {
        (void)w;
        // Pointer-to-int return types ("i32* %fp") are not int returns.
        std::size_t after = skip_type(toks, i);
        inst.call_returns_int =
            !(i + 1 < after && toks[i + 1].kind == Token::Kind::kPunct &&
              toks[i + 1].text == "*");
      }
    }
    std::size_t after_type = skip_type(toks, i);
    if (after_type < toks.size()) {
      const Token& callee = toks[after_type];
      inst.is_direct_call = callee.kind == Token::Kind::kGlobal;
    }
  }

  static void analyze_phi(const std::vector<Token>& toks, std::size_t m,
                          IrInstruction& inst) {
    std::size_t i = skip_type(toks, m + 1);
    unsigned incoming = 0;
    for (; i < toks.size(); ++i) {
      if (toks[i].kind == Token::Kind::kPunct && toks[i].text == "[") {
        ++incoming;
        i = skip_balanced(toks, i, "[", "]") - 1;
      }
    }
    inst.phi_incoming_count = incoming;
  }

  void link_cfg(IrFunction& fn) const {
    std::map<std::string, IrBasicBlock*> by_label;
    for (IrBasicBlock& b : fn.blocks) by_label[b.label] = &b;
    for (IrBasicBlock& b : fn.blocks) {
      for (const IrInstruction& inst : b.instructions) {
        if (!inst.is_terminator) continue;
        for (const std::string& target : inst.successor_labels) {
          auto it = by_label.find(target);
          if (it == by_label.end()) {
            throw ParseError(
                "branch to unknown label '%" + target + "' in @" + fn.name, 1,
                1);
          }
          b.successors.insert(target);
          it->second->predecessors.insert(b.label);
        }
      }
    }
  }

  std::string source_name_;
  std::vector<LineRecord> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

Opcode classify_opcode(std::string_view mnemonic) {
  auto it = kOpcodeNames.find(mnemonic);
  return it == kOpcodeNames.end() ? Opcode::kOther : it->second;
}

bool is_terminator_opcode(std::string_view mnemonic) {
  return kTerminators.count(mnemonic) > 0;
}

bool is_binary_opcode(std::string_view mnemonic) {
  return kBinaryOps.count(mnemonic) > 0;
}

bool is_unary_opcode(std::string_view mnemonic) {
  return kUnaryInsts.count(mnemonic) > 0;
}

bool is_memory_opcode(std::string_view mnemonic) {
  return kMemoryInsts.count(mnemonic) > 0;
}

IrModule parse_ir(std::string_view ir_text, std::string source_name) {
  ModuleParser parser(ir_text, std::move(source_name));
  return parser.parse();
}

}  // namespace aware::ir
