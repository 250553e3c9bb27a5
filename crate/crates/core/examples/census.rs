//! Compares the partition of small tensor products by canonical label with the
//! partition by the brute-force oracle.

use std::collections::BTreeMap;
use std::time::Instant;

use gradiv::catalog::{small_products, tensor_of};
use gradiv::equivalence::oracle_search;
use gradiv::normalize::normalize;

fn main() -> gradiv::Result<()> {
    let max_dim: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let t0 = Instant::now();
    let max_factors: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let corpus = small_products(max_factors, max_dim);
    println!("{} products of at most {max_factors} basics with dimension <= {max_dim}", corpus.len());
    // bucket (kind, group, dim) -> label -> members
    let mut buckets: BTreeMap<String, BTreeMap<String, Vec<usize>>> = BTreeMap::new();
    let mut pres = Vec::new();
    for (i, fs) in corpus.iter().enumerate() {
        let p = tensor_of(fs)?;
        let label = normalize(fs)?.label();
        let key = format!("{:?} {} {}", p.kind(), p.group().label(), p.dimension());
        buckets.entry(key).or_default().entry(label).or_default().push(i);
        pres.push(p);
    }
    println!("normalized in {:.1?}", t0.elapsed());
    let mut disagreements = 0;
    let mut calls = 0;
    for (key, classes) in &buckets {
        let t = Instant::now();
        let reps: Vec<usize> = classes.values().map(|m| m[0]).collect();
        for members in classes.values() {
            for &j in &members[1..] {
                calls += 1;
                if oracle_search(&pres[members[0]], &pres[j], u64::MAX)?.is_none() {
                    disagreements += 1;
                    println!("SPLIT {:?} vs {:?}", corpus[members[0]], corpus[j]);
                }
            }
        }
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                calls += 1;
                if oracle_search(&pres[reps[a]], &pres[reps[b]], u64::MAX)?.is_some() {
                    disagreements += 1;
                    println!("MERGE {:?} vs {:?}", corpus[reps[a]], corpus[reps[b]]);
                }
            }
        }
        let el = t.elapsed();
        if el.as_millis() > 500 {
            println!("  {key}: {} classes, {:.1?}", classes.len(), el);
        }
    }
    println!("{calls} oracle calls, {disagreements} disagreements, {:.1?}", t0.elapsed());
    Ok(())
}
