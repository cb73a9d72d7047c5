# -*- coding: utf-8 -*-
#######
# nonlocal-core - a workbench for multiplayer nonlocal games: classical,
# no-signaling, explicit quantum and NPA-relaxed quantum values.
#
# Copyright (c) 2019 nonlocal-core developers
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
#######

"""
Report models
"""
import json
from flask_restful_swagger_2 import Schema

__license__ = "GPLv3"
__author__ = "nonlocal-core developers"
__copyright__ = "Copyright 2019, nonlocal-core developers"

FLOAT_DIGITS = 12


class ComputationModel(Schema):
    """This class defines the model of a single computed value.

    Every float value is accompanied by the method that produced it and the
    tolerance it is valid for.
    """
    type = 'object'
    properties = {
        'computation': {
            'type': 'string',
            'description': 'The computed quantity: classical, ns, quantum, npa, bell, membership'
        },
        'method': {
            'type': 'string',
            'description': 'The method: enumeration, lp, sdp, born-rule or seesaw'
        },
        'value': {
            'type': 'string',
            'description': 'The exact rational value as string, or the float value as string'
        },
        'value_float': {
            'type': 'number',
            'format': 'double',
            'description': 'The value as float, rounded to 12 decimals'
        },
        'tolerance': {
            'type': 'number',
            'format': 'double',
            'description': 'The tolerance the value is valid for, 0 for exact values'
        },
        'residuals': {
            'type': 'object',
            'description': 'Solver residuals, for example primal and dual residual of the SDP'
        },
        'converged': {
            'type': 'boolean',
            'description': 'False if an iterative solver stopped at its iteration cap'
        },
        'label': {
            'type': 'string',
            'description': 'The symbol of the value, omega_q is only used if the explicit '
                           'strategy value and the relaxation bound coincide'
        },
        'witness': {
            'type': 'object',
            'description': 'An optimal deterministic strategy, one question -> answer map per party'
        },
        'details': {
            'type': 'object',
            'description': 'Further computation specific information'
        },
        'wall_time': {
            'type': 'number',
            'format': 'double',
            'description': 'The computation time in seconds, only reported on request'
        }
    }
    required = ['computation', 'method', 'value', 'value_float', 'tolerance']

    example = {
        "computation": "classical",
        "method": "enumeration",
        "value": "3/4",
        "value_float": 0.75,
        "tolerance": 0.0,
        "witness": {"parties": [{"0": "0", "1": "0"}, {"0": "0", "1": "0"}]}
    }


class ValueReportModel(Schema):
    """This class defines the report of a set of computations on one game
    """
    type = 'object'
    properties = {
        'game': {
            'type': 'string',
            'description': 'The name of the game'
        },
        'game_hash': {
            'type': 'string',
            'description': 'The SHA256 hash of the canonical JSON form of the game'
        },
        'computations': {
            'type': 'array',
            'items': ComputationModel,
            'description': 'The computed values'
        },
        'notes': {
            'type': 'array',
            'items': {'type': 'string'},
            'description': 'Conventions that apply to the values, for example a default input distribution'
        }
    }
    required = ['game', 'game_hash', 'computations']

    example = {
        "game": "chsh",
        "game_hash": "4f2a...",
        "computations": [ComputationModel.example]
    }


class MembershipModel(Schema):
    """This class defines the result of a local polytope membership test
    """
    type = 'object'
    properties = {
        'local': {
            'type': 'boolean',
            'description': 'True if the behavior is a mixture of deterministic strategies'
        },
        'components': {
            'type': 'array',
            'items': {'type': 'object'},
            'description': 'The weighted deterministic strategies of the local model'
        },
        'functional': {
            'type': 'object',
            'description': 'The separating Bell functional in the functional JSON format'
        },
        'local_bound': {
            'type': 'number',
            'format': 'double',
            'description': 'The maximum of the functional over deterministic behaviors'
        },
        'behavior_value': {
            'type': 'number',
            'format': 'double',
            'description': 'The value of the functional on the behavior'
        },
        'visibility': {
            'type': 'number',
            'format': 'double',
            'description': 'The largest weight of the behavior in a mixture with white noise that is local'
        }
    }
    required = ['local']

    example = {
        "local": False,
        "local_bound": 2.0,
        "behavior_value": 2.828427124746,
        "visibility": 0.707106781187
    }


class CatalogEntryModel(Schema):
    """This class defines a game of the catalog
    """
    type = 'object'
    properties = {
        'name': {
            'type': 'string',
            'description': 'The name used with --game'
        },
        'description': {
            'type': 'string',
            'description': 'A short description of the game'
        },
        'parameters': {
            'type': 'array',
            'items': {'type': 'string'},
            'description': 'Options the game requires'
        },
        'canonical_strategy': {
            'type': 'boolean',
            'description': 'True if the catalog holds a canonical quantum strategy'
        }
    }
    required = ['name', 'description']

    example = {
        "name": "magic_square",
        "description": "Rows of even and columns of odd parity that agree on the shared cell",
        "parameters": [],
        "canonical_strategy": True
    }


def round_floats(document, digits=FLOAT_DIGITS):
    """Round all floats of a nested document, -0.0 becomes 0.0"""
    if isinstance(document, float):
        return round(document, digits) + 0.0
    if isinstance(document, dict):
        return dict((k, round_floats(v, digits)) for k, v in document.items())
    if isinstance(document, (list, tuple)):
        return [round_floats(v, digits) for v in document]
    return document


def to_json(model):
    """Serialize a model with sorted keys and rounded floats"""
    return json.dumps(round_floats(model), sort_keys=True, indent=2)
