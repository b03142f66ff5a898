#pragma once

// Everything: OWL model and RDF/XML I/O, F-logic syntax, both translators,
// the rule engine and the command functions.

#include "owl2fl/diagnostic.hpp"
#include "owl2fl/owl/model.hpp"
#include "owl2fl/owl/parser.hpp"
#include "owl2fl/owl/writer.hpp"
#include "owl2fl/flogic/ast.hpp"
#include "owl2fl/flogic/parser.hpp"
#include "owl2fl/flogic/printer.hpp"
#include "owl2fl/translate/naming.hpp"
#include "owl2fl/translate/checker_library.hpp"
#include "owl2fl/translate/owl_to_flogic.hpp"
#include "owl2fl/translate/flogic_to_owl.hpp"
#include "owl2fl/engine/store.hpp"
#include "owl2fl/engine/knowledge_base.hpp"
#include "owl2fl/cli/commands.hpp"
