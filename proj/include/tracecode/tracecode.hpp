#pragma once

#include "tracecode/field.hpp"
#include "tracecode/weights.hpp"
#include "tracecode/defining_set.hpp"
#include "tracecode/code.hpp"
#include "tracecode/duality.hpp"
#include "tracecode/sets.hpp"
#include "tracecode/spectra.hpp"
#include "tracecode/theorems.hpp"
#include "tracecode/secret_sharing.hpp"
#include "tracecode/io.hpp"
