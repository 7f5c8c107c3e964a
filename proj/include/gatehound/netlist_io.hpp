#pragma once

#include <string>

#include "gatehound/netlist.hpp"
#include "gatehound/util.hpp"

namespace gatehound {

// Parse/serialize for the `.ghn` canonical netlist format, version "ghn-1".
// The exact grammar is documented in docs/ghn-format.md. Serialization is
// deterministic (gates in ascending id order, pins in canonical order), so
// structurally equal netlists serialize byte-identically.

struct ParseOptions {
  // Lenient mode skips unknown directives and unknown key=value attributes
  // instead of rejecting the document.
  bool lenient = false;
  // When false, semantic validation is left to the caller (the validate
  // subcommand wants the report, not an exception).
  bool validate = true;
};

struct ParseError : Error {
  int line = 0;
  ParseError(int line_, const std::string& what)
      : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Returns a validated netlist or throws ParseError (syntax, semantic or
// version error). Never returns a partially parsed netlist.
Netlist parse_netlist(const std::string& text, const ParseOptions& opts = {});

// Throws Error when the netlist does not validate cleanly.
std::string serialize_netlist(const Netlist& n);

Netlist load_netlist(const std::string& path, const ParseOptions& opts = {});
void save_netlist(const Netlist& n, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gatehound
