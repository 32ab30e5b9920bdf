#pragma once

#include "stallings/automaton.hpp"
#include "stallings/cosetenum.hpp"
#include "stallings/enumrand.hpp"
#include "stallings/errors.hpp"
#include "stallings/extensions.hpp"
#include "stallings/folding.hpp"
#include "stallings/handle.hpp"
#include "stallings/intersect.hpp"
#include "stallings/spectra.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/word.hpp"
