//! CSP instances, assignments, and the local maximality predicates.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::relation::{is_valid_name, ConstraintLanguage, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub id: usize,
    pub name: String,
}

/// A relation applied to a scope. Scopes may repeat variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    /// Index into the instance's language.
    pub relation: usize,
    pub scope: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    language: ConstraintLanguage,
    variables: Vec<Variable>,
    by_name: HashMap<String, usize>,
    constraints: Vec<Constraint>,
}

/// One value per variable id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Assignment {
            bits: vec![false; n],
        }
    }

    pub fn ones(n: usize) -> Self {
        Assignment {
            bits: vec![true; n],
        }
    }

    /// Bit `v` is taken from bit `v` of `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Assignment {
            bits: (0..n).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn from_str_bits(s: &str) -> Self {
        Assignment {
            bits: s
                .chars()
                .map(|c| match c {
                    '0' => false,
                    '1' => true,
                    _ => panic!("expected 0/1, found {c:?}"),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `σ[v ↦ value]`.
    pub fn with(&self, v: usize, value: bool) -> Assignment {
        let mut bits = self.bits.clone();
        bits[v] = value;
        Assignment { bits }
    }

    pub fn flip_to_one(&self, v: usize) -> Assignment {
        self.with(v, true)
    }
}

impl Instance {
    pub fn new(language: ConstraintLanguage) -> Self {
        Instance {
            language,
            variables: Vec::new(),
            by_name: HashMap::new(),
            constraints: Vec::new(),
        }
    }

    pub fn with_variables<S: Into<String>>(
        language: ConstraintLanguage,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut instance = Instance::new(language);
        for name in names {
            instance.add_variable(name)?;
        }
        Ok(instance)
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(Error::InvalidName(name));
        }
        if self.by_name.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        let id = self.variables.len();
        self.by_name.insert(name.clone(), id);
        self.variables.push(Variable { id, name });
        Ok(id)
    }

    pub fn add_constraint(&mut self, relation: &str, scope: &[usize]) -> Result<()> {
        let index = self
            .language
            .index_of(relation)
            .ok_or_else(|| Error::UnknownRelation(relation.to_string()))?;
        self.push_constraint(Constraint {
            relation: index,
            scope: scope.to_vec(),
        })
    }

    pub fn add_constraint_by_names(&mut self, relation: &str, scope: &[&str]) -> Result<()> {
        let ids = scope
            .iter()
            .map(|name| {
                self.variable_id(name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.add_constraint(relation, &ids)
    }

    pub fn push_constraint(&mut self, constraint: Constraint) -> Result<()> {
        if constraint.relation >= self.language.len() {
            return Err(Error::UnknownRelation(format!("#{}", constraint.relation)));
        }
        let (name, relation) = self.language.by_index(constraint.relation);
        if relation.arity() != constraint.scope.len() {
            return Err(Error::ArityMismatch {
                relation: name.to_string(),
                expected: relation.arity(),
                found: constraint.scope.len(),
            });
        }
        if let Some(&bad) = constraint
            .scope
            .iter()
            .find(|&&v| v >= self.variables.len())
        {
            return Err(Error::VariableOutOfRange {
                index: bad,
                len: self.variables.len(),
            });
        }
        self.constraints.push(constraint);
        Ok(())
    }

    pub fn language(&self) -> &ConstraintLanguage {
        &self.language
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_name(&self, id: usize) -> &str {
        &self.variables[id].name
    }

    pub fn variable_id(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn relation(&self, constraint: &Constraint) -> &Relation {
        self.language.by_index(constraint.relation).1
    }

    pub fn relation_name(&self, constraint: &Constraint) -> &str {
        self.language.by_index(constraint.relation).0
    }

    /// Indices of relations that occur in some constraint, in language order.
    pub fn used_relations(&self) -> Vec<usize> {
        let mut used = vec![false; self.language.len()];
        for c in &self.constraints {
            used[c.relation] = true;
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    /// The tuple a constraint's scope takes under `σ`, as a relation code.
    pub fn scope_code(&self, constraint: &Constraint, sigma: &Assignment) -> u64 {
        constraint
            .scope
            .iter()
            .fold(0u64, |acc, &v| (acc << 1) | sigma.get(v) as u64)
    }

    fn check_length(&self, sigma: &Assignment) -> Result<()> {
        if sigma.len() != self.variables.len() {
            return Err(Error::AssignmentLength {
                expected: self.variables.len(),
                found: sigma.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, sigma: &Assignment) -> Result<bool> {
        self.check_length(sigma)?;
        Ok(self.satisfies(sigma))
    }

    fn satisfies(&self, sigma: &Assignment) -> bool {
        self.constraints
            .iter()
            .all(|c| self.relation(c).contains_code(self.scope_code(c, sigma)))
    }

    /// `σ(v) = 1`, or raising `v` to 1 breaks some constraint.
    pub fn is_maximal_for(&self, sigma: &Assignment, v: usize) -> Result<bool> {
        self.check_length(sigma)?;
        if v >= self.variables.len() {
            return Err(Error::VariableOutOfRange {
                index: v,
                len: self.variables.len(),
            });
        }
        if !self.satisfies(sigma) {
            return Err(Error::NotSatisfying);
        }
        Ok(sigma.get(v) || !self.satisfies(&sigma.flip_to_one(v)))
    }

    pub fn is_locally_maximal(&self, sigma: &Assignment) -> Result<bool> {
        self.check_length(sigma)?;
        if !self.satisfies(sigma) {
            return Err(Error::NotSatisfying);
        }
        Ok((0..self.variables.len())
            .all(|v| sigma.get(v) || !self.satisfies(&sigma.flip_to_one(v))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn worked_example() -> Instance {
        let r = Relation::from_strs(&["000", "001", "100", "011", "111"]);
        let language = ConstraintLanguage::from_relations([("R", r)]).unwrap();
        let mut i = Instance::with_variables(language, ["v1", "v2", "v3", "v4", "v5"]).unwrap();
        i.add_constraint("R", &[0, 1, 2]).unwrap();
        i.add_constraint("R", &[2, 3, 4]).unwrap();
        i
    }

    #[test]
    fn worked_example_evaluation() {
        let i = worked_example();
        let s1 = Assignment::from_str_bits("00110");
        let s2 = Assignment::from_str_bits("00111");
        let s3 = Assignment::from_str_bits("11100");
        assert!(!i.evaluate(&s1).unwrap());
        assert!(i.evaluate(&s2).unwrap());
        assert!(i.evaluate(&s3).unwrap());
    }

    #[test]
    fn worked_example_maximality() {
        let i = worked_example();
        let s2 = Assignment::from_str_bits("00111");
        assert_eq!(s2.flip_to_one(1), Assignment::from_str_bits("01111"));
        assert!(!i.is_maximal_for(&s2, 1).unwrap());
        for v in [0, 2, 3, 4] {
            assert!(i.is_maximal_for(&s2, v).unwrap(), "v{}", v + 1);
        }
        assert!(!i.is_locally_maximal(&s2).unwrap());
        assert!(i
            .is_locally_maximal(&Assignment::from_str_bits("11100"))
            .unwrap());
        assert!(i.is_locally_maximal(&Assignment::ones(5)).unwrap());
    }

    #[test]
    fn maximality_requires_satisfying_assignment() {
        let i = worked_example();
        let s1 = Assignment::from_str_bits("00110");
        assert_eq!(i.is_maximal_for(&s1, 0), Err(Error::NotSatisfying));
        assert_eq!(i.is_locally_maximal(&s1), Err(Error::NotSatisfying));
    }

    #[test]
    fn flip_is_idempotent_on_ones() {
        let s = Assignment::from_str_bits("10");
        assert_eq!(s.flip_to_one(0), s);
        assert_eq!(
            Assignment::from_str_bits("00").flip_to_one(0),
            Assignment::from_str_bits("10")
        );
    }

    #[test]
    fn empty_instances() {
        let i = Instance::with_variables(ConstraintLanguage::new(), ["a", "b"]).unwrap();
        assert!(i.evaluate(&Assignment::from_str_bits("01")).unwrap());
        let z = Instance::new(ConstraintLanguage::new());
        assert!(z.evaluate(&Assignment::zeros(0)).unwrap());
        assert!(z.is_locally_maximal(&Assignment::zeros(0)).unwrap());
    }

    #[test]
    fn constraint_validation() {
        let mut i = worked_example();
        assert!(matches!(
            i.add_constraint("R", &[0, 1]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            i.add_constraint("R", &[0, 1, 9]),
            Err(Error::VariableOutOfRange { .. })
        ));
        assert!(matches!(
            i.add_constraint("S", &[0, 1, 2]),
            Err(Error::UnknownRelation(_))
        ));
        assert!(matches!(i.add_variable("v1"), Err(Error::DuplicateName(_))));
        assert!(matches!(
            i.evaluate(&Assignment::zeros(3)),
            Err(Error::AssignmentLength { .. })
        ));
    }

    #[test]
    fn repeated_scope_variables() {
        let language = ConstraintLanguage::from_relations([("NAND", Relation::nand())]).unwrap();
        let mut i = Instance::with_variables(language, ["u"]).unwrap();
        i.add_constraint("NAND", &[0, 0]).unwrap();
        assert!(i.evaluate(&Assignment::from_str_bits("0")).unwrap());
        assert!(!i.evaluate(&Assignment::from_str_bits("1")).unwrap());
    }
}
