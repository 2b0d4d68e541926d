#!/usr/bin/env python3
#
#  Copyright 2026 The pydpq Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
#

"""
Class membership and instance resolution.

Simple and Parameter are decided structurally from the declarations;
user classes are resolved by looking up the head type constructor in the
instance table and resolving the instance's premises recursively.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from pydpq import core as c
from pydpq.diagnostics import NO_SPAN, CheckError, DiagnosticCode, Span
from pydpq.env import PARAMETER, SIMPLE, DataKind
from pydpq.syntax import Icit
from pydpq.values import (VBang, VCirc, VConstraint, VExists, VFlex, VPi, VRigid, VTensor, VTyCon, VType,
                          VUnitT)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Assumption:
    """
    A class constraint in scope, with the level of the variable holding
    its evidence.
    """
    cls: object
    arg: object
    level: int


@dataclass(eq=False)
class Hole:
    """
    Evidence to be found for `cls arg`, in a context of `level` variables.
    """
    cls: object
    arg: object
    level: int
    assumptions: tuple
    span: Span = NO_SPAN
    solution: Optional[object] = None


def contains_meta(term):
    if isinstance(term, (c.Meta, c.InsertedMeta)):
        return True
    if isinstance(term, c.Evidence):
        return term.hole.solution is None
    return any(contains_meta(child) for child in c.subterms(term))


class ClassOracle:
    def __init__(self, evaluator, unifier, instances):
        self.ev = evaluator
        self.unifier = unifier
        self.instances = instances

    # Built-in classes

    def ends_in_type(self, level, v):
        v = self.ev.whnf(v)
        while isinstance(v, VPi):
            v = self.ev.whnf(self.ev.instantiate(v.closure, VRigid(level)))
            level += 1
        return isinstance(v, VType)

    def assumed(self, cls, level, v, assumptions):
        for assumption in assumptions:
            if assumption.cls is cls and self.unifier.conv(level, assumption.arg, v):
                return assumption
        return None

    def is_parameter(self, level, v, assumptions=()):
        v = self.ev.whnf(v)
        if isinstance(v, (VBang, VCirc, VType, VUnitT, VConstraint)):
            return True
        if isinstance(v, VPi):
            if v.icit is Icit.INSTANCE:
                return self.is_parameter(level + 1, self.ev.instantiate(v.closure, VRigid(level)), assumptions)
            return self.ends_in_type(level, v)
        if isinstance(v, VTensor):
            return self.is_parameter(level, v.left, assumptions) and self.is_parameter(level, v.right, assumptions)
        if isinstance(v, VExists):
            if not self.is_parameter(level, v.dom, assumptions):
                return False
            return self.is_parameter(level + 1, self.ev.instantiate(v.closure, VRigid(level)), assumptions)
        if isinstance(v, VTyCon):
            premises = v.info.parameter_premises
            if premises is None or v.info.kind is DataKind.OBJECT or len(v.args) < v.info.arity:
                return False
            return all(self.is_parameter(level, v.args[i], assumptions) for i in premises)
        return self.assumed(PARAMETER, level, v, assumptions) is not None

    def is_simple(self, level, v, assumptions=()):
        v = self.ev.whnf(v)
        if isinstance(v, VUnitT):
            return True
        if isinstance(v, VTensor):
            return self.is_simple(level, v.left, assumptions) and self.is_simple(level, v.right, assumptions)
        if isinstance(v, VTyCon):
            if v.info.kind is DataKind.OBJECT:
                return True
            premises = v.info.simple_premises
            if premises is None or len(v.args) < v.info.arity:
                return False
            return all(self.is_simple(level, v.args[i], assumptions) for i in premises)
        return self.assumed(SIMPLE, level, v, assumptions) is not None

    # Resolution

    def fail(self, cls, level, v, span, reason=None):
        from pydpq.pretty import pretty_value
        message = f"no instance for {cls.name} ({pretty_value(self.ev, level, v)})"
        if reason:
            message += f": {reason}"
        raise CheckError(message, span, DiagnosticCode.CLASS_RESOLUTION_ERROR)

    def resolve(self, hole):
        """
        Return evidence for the hole as a core term, None when the type is
        not known well enough yet, or raise ClassResolutionError.
        """
        return self.resolve_at(hole.cls, hole.arg, hole.level, hole.assumptions, hole.span)

    def resolve_at(self, cls, arg, level, assumptions, span):
        v = self.ev.whnf(arg)
        if cls.builtin:
            if contains_meta(self.ev.quote(level, v)):
                return None
            holds = self.is_simple(level, v, assumptions) if cls is SIMPLE else \
                self.is_parameter(level, v, assumptions)
            if not holds:
                self.fail(cls, level, v, span)
            return c.Witness(cls.name)
        if isinstance(v, VFlex):
            return None
        assumption = self.assumed(cls, level, v, assumptions)
        if assumption is not None:
            return c.Var(level - assumption.level - 1, span)
        if not isinstance(v, VTyCon):
            self.fail(cls, level, v, span)
        instance = self.instances.lookup(cls, v.info)
        if instance is None or len(v.args) != instance.nvars:
            self.fail(cls, level, v, span)
        term = c.Global(instance.defn)
        for a in v.args:
            term = c.App(term, self.ev.quote(level, a), Icit.IRRELEVANT)
        for premise_cls, premise in instance.premises:
            premise_value = self.ev.eval(tuple(v.args), premise)
            evidence = self.resolve_at(premise_cls, premise_value, level, assumptions, span)
            if evidence is None:
                return None
            term = c.App(term, evidence, Icit.INSTANCE)
        logger.debug("resolved %s %s with %s", cls.name, v.info.name, instance.defn.name)
        return term
