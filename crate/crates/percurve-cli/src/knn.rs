//! k-nearest-neighbour classification with Euclidean distance.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KnnError {
    #[error("training set is empty")]
    EmptyTraining,
    #[error("k must be at least 1")]
    BadK,
    #[error("feature length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub predicted: Vec<String>,
    pub accuracy: f64,
    /// Row = true label, column = predicted label, indices into `labels`.
    pub labels: Vec<String>,
    pub confusion: Vec<Vec<usize>>,
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Predict a label for one query point. Majority vote over the k nearest
/// training points; vote ties go to the class of the closest neighbour
/// among the tied classes.
pub fn classify_one(
    train: &[(String, Vec<f64>)],
    query: &[f64],
    k: usize,
) -> Result<String, KnnError> {
    if train.is_empty() {
        return Err(KnnError::EmptyTraining);
    }
    if k == 0 {
        return Err(KnnError::BadK);
    }
    let expected = train[0].1.len();
    if query.len() != expected {
        return Err(KnnError::LengthMismatch {
            expected,
            actual: query.len(),
        });
    }
    let mut dists: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, (_, v))| (euclidean(v, query), i))
        .collect();
    // Index tiebreak keeps the ordering deterministic.
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let nearest = &dists[..k.min(dists.len())];

    let mut votes: Vec<(&str, usize, f64)> = Vec::new();
    for &(d, i) in nearest {
        let label = train[i].0.as_str();
        match votes.iter_mut().find(|(l, _, _)| *l == label) {
            Some(entry) => entry.1 += 1,
            None => votes.push((label, 1, d)),
        }
    }
    let best = votes
        .iter()
        .max_by(|a, b| {
            a.1.cmp(&b.1)
                .then_with(|| b.2.partial_cmp(&a.2).unwrap())
        })
        .unwrap();
    Ok(best.0.to_string())
}

/// Classify a labelled test set and report accuracy and a confusion matrix.
pub fn evaluate(
    train: &[(String, Vec<f64>)],
    test: &[(String, Vec<f64>)],
    k: usize,
) -> Result<Evaluation, KnnError> {
    let mut labels: Vec<String> = train.iter().map(|(l, _)| l.clone()).collect();
    labels.extend(test.iter().map(|(l, _)| l.clone()));
    labels.sort();
    labels.dedup();

    let index_of = |label: &str| labels.iter().position(|l| l == label).unwrap();
    let mut confusion = vec![vec![0usize; labels.len()]; labels.len()];
    let mut predicted = Vec::with_capacity(test.len());
    let mut correct = 0usize;
    for (truth, query) in test {
        let guess = classify_one(train, query, k)?;
        if guess == *truth {
            correct += 1;
        }
        confusion[index_of(truth)][index_of(&guess)] += 1;
        predicted.push(guess);
    }
    let accuracy = if test.is_empty() {
        0.0
    } else {
        correct as f64 / test.len() as f64
    };
    Ok(Evaluation {
        predicted,
        accuracy,
        labels,
        confusion,
    })
}
