//! List operations over 1D integer lists and 2D integer grids.
//!
//! Axis convention for 2D sorting: `axis=0` sorts every column
//! independently, `axis=1` sorts every row. With no axis, rows are sorted
//! (the last axis, as in numeric array libraries).

use serde_json::Value;

use crate::error::ToolError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntList {
    Flat(Vec<i64>),
    Grid(Vec<Vec<i64>>),
}

impl IntList {
    pub fn from_json(v: &Value) -> Result<Self, ToolError> {
        let items = v
            .as_array()
            .ok_or_else(|| ToolError::invalid("list", "expected a list"))?;
        let int = |x: &Value| {
            x.as_i64()
                .ok_or_else(|| ToolError::invalid("list", format!("not an integer: {x}")))
        };
        if !items.is_empty() && items.iter().all(Value::is_array) {
            let rows = items
                .iter()
                .map(|r| {
                    r.as_array()
                        .unwrap()
                        .iter()
                        .map(int)
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(IntList::Grid(rows))
        } else {
            Ok(IntList::Flat(
                items.iter().map(int).collect::<Result<_, _>>()?,
            ))
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            IntList::Flat(v) => Value::from(v.clone()),
            IntList::Grid(rows) => {
                Value::Array(rows.iter().map(|r| Value::from(r.clone())).collect())
            }
        }
    }

    pub fn render(&self) -> String {
        fn row(r: &[i64]) -> String {
            format!(
                "[{}]",
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
            )
        }
        match self {
            IntList::Flat(v) => row(v),
            IntList::Grid(rows) => format!(
                "[{}]",
                rows.iter().map(|r| row(r)).collect::<Vec<_>>().join(", ")
            ),
        }
    }

    fn len(&self) -> usize {
        match self {
            IntList::Flat(v) => v.len(),
            IntList::Grid(r) => r.len(),
        }
    }
}

/// A value to add: a scalar for flat lists, a row for grids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Scalar(i64),
    Row(Vec<i64>),
}

impl Item {
    pub fn from_json(v: &Value) -> Result<Self, ToolError> {
        match v {
            Value::Array(items) => Ok(Item::Row(
                items
                    .iter()
                    .map(|x| {
                        x.as_i64().ok_or_else(|| {
                            ToolError::invalid("value", "row entries must be integers")
                        })
                    })
                    .collect::<Result<_, _>>()?,
            )),
            other => other
                .as_i64()
                .map(Item::Scalar)
                .ok_or_else(|| ToolError::invalid("value", "expected an integer")),
        }
    }
}

fn place(list: &mut IntList, index: usize, item: Item) -> Result<(), ToolError> {
    match (list, item) {
        (IntList::Flat(v), Item::Scalar(x)) => v.insert(index, x),
        (IntList::Grid(rows), Item::Row(r)) => {
            if rows.first().is_some_and(|f| f.len() != r.len()) {
                return Err(ToolError::invalid(
                    "value",
                    "row length does not match the grid",
                ));
            }
            rows.insert(index, r)
        }
        (IntList::Flat(_), Item::Row(_)) => {
            return Err(ToolError::invalid("value", "expected an integer"))
        }
        (IntList::Grid(_), Item::Scalar(_)) => {
            return Err(ToolError::invalid("value", "expected a row"))
        }
    }
    Ok(())
}

pub fn append(mut list: IntList, item: Item) -> Result<IntList, ToolError> {
    let n = list.len();
    place(&mut list, n, item)?;
    Ok(list)
}

pub fn insert(mut list: IntList, index: i64, item: Item) -> Result<IntList, ToolError> {
    if index < 0 || index as usize > list.len() {
        return Err(ToolError::invalid(
            "index",
            format!("index {index} out of range 0..={}", list.len()),
        ));
    }
    place(&mut list, index as usize, item)?;
    Ok(list)
}

pub fn remove(mut list: IntList, index: i64) -> Result<IntList, ToolError> {
    if index < 0 || index as usize >= list.len() {
        return Err(ToolError::invalid(
            "index",
            format!("index {index} out of range 0..{}", list.len()),
        ));
    }
    match &mut list {
        IntList::Flat(v) => {
            v.remove(index as usize);
        }
        IntList::Grid(r) => {
            r.remove(index as usize);
        }
    }
    Ok(list)
}

pub fn reverse(mut list: IntList) -> IntList {
    match &mut list {
        IntList::Flat(v) => v.reverse(),
        IntList::Grid(r) => r.reverse(),
    }
    list
}

pub fn sort(list: IntList, axis: Option<i64>) -> Result<IntList, ToolError> {
    match list {
        IntList::Flat(mut v) => {
            if axis.is_some() {
                return Err(ToolError::invalid(
                    "axis",
                    "axis is only valid for 2D lists",
                ));
            }
            v.sort();
            Ok(IntList::Flat(v))
        }
        IntList::Grid(mut rows) => {
            let width = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != width) {
                return Err(ToolError::invalid(
                    "list",
                    "2D list rows must have equal length",
                ));
            }
            match axis.unwrap_or(1) {
                0 => {
                    for c in 0..width {
                        let mut col: Vec<i64> = rows.iter().map(|r| r[c]).collect();
                        col.sort();
                        for (r, v) in rows.iter_mut().zip(col) {
                            r[c] = v;
                        }
                    }
                }
                1 | -1 => rows.iter_mut().for_each(|r| r.sort()),
                other => {
                    return Err(ToolError::invalid(
                        "axis",
                        format!("axis must be 0 or 1, got {other}"),
                    ))
                }
            }
            Ok(IntList::Grid(rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use serde_json::json;

    #[test]
    fn reference_values() {
        let l = IntList::Flat(vec![7, 19, 29]);
        assert_eq!(
            insert(l, 2, Item::Scalar(36)).unwrap().render(),
            "[7, 19, 36, 29]"
        );
        let l = IntList::Flat(vec![86, 197, 199, 232, 66, 53, 234]);
        assert_eq!(
            sort(l, None).unwrap().render(),
            "[53, 66, 86, 197, 199, 232, 234]"
        );
    }

    #[test]
    fn grid_axes() {
        let g = IntList::Grid(vec![vec![3, 1, 2], vec![1, 5, 0]]);
        assert_eq!(
            sort(g.clone(), Some(0)).unwrap().render(),
            "[[1, 1, 0], [3, 5, 2]]"
        );
        assert_eq!(
            sort(g.clone(), Some(1)).unwrap().render(),
            "[[1, 2, 3], [0, 1, 5]]"
        );
        assert_eq!(
            sort(g.clone(), None).unwrap(),
            sort(g.clone(), Some(1)).unwrap()
        );
        assert_eq!(reverse(g.clone()).render(), "[[1, 5, 0], [3, 1, 2]]");
        assert_eq!(
            append(g.clone(), Item::Row(vec![9, 9, 9]))
                .unwrap()
                .render(),
            "[[3, 1, 2], [1, 5, 0], [9, 9, 9]]"
        );
        assert!(append(g, Item::Row(vec![1])).is_err());
    }

    #[test]
    fn errors() {
        let l = IntList::Flat(vec![1, 2, 3]);
        assert!(remove(l.clone(), 3).is_err());
        assert!(insert(l.clone(), -1, Item::Scalar(0)).is_err());
        assert!(sort(l.clone(), Some(0)).is_err());
        assert_eq!(remove(l, 0).unwrap().render(), "[2, 3]");
        assert!(IntList::from_json(&json!([1, "a"])).is_err());
        assert_eq!(
            IntList::from_json(&json!([[1], [2]])).unwrap(),
            IntList::Grid(vec![vec![1], vec![2]])
        );
    }

    proptest! {
        #[test]
        fn reverse_twice_is_identity(v in prop::collection::vec(-1000i64..1000, 0..20)) {
            let l = IntList::Flat(v);
            prop_assert_eq!(reverse(reverse(l.clone())), l);
        }

        #[test]
        fn column_sort_orders_every_column(g in prop::collection::vec(prop::collection::vec(0i64..5000, 4), 1..6)) {
            let IntList::Grid(rows) = sort(IntList::Grid(g), Some(0)).unwrap() else { unreachable!() };
            for c in 0..4 {
                prop_assert!(rows.windows(2).all(|w| w[0][c] <= w[1][c]));
            }
        }
    }
}
