//! One host per class absorbs every small connected member of the class, and the final
//! truncation still contains each guest induced at its recorded place.

use univgraph::families::FamilySpec;
use univgraph::paths::circumference;
use univgraph::series_parallel::is_k4_minor_free;
use univgraph::universal::{build_host, materialize, verify_host, Backend, EmbeddingCertificate, HostDescription};
use univgraph::{oracle, Error, Graph};

fn absorb(
    host: &mut HostDescription,
    in_class: impl Fn(&Graph) -> bool,
    max_order: usize,
) -> Vec<EmbeddingCertificate> {
    let mut certs = Vec::new();
    for n in 1..=max_order {
        for g in oracle::graphs_up_to_iso(n) {
            if !g.is_connected() {
                assert!(matches!(host.embed(&g), Err(Error::Precondition(_))));
                continue;
            }
            match host.embed(&g) {
                Ok(c) => {
                    assert!(
                        in_class(&g),
                        "embedded a non-member {:?}",
                        g.edges().collect::<Vec<_>>()
                    );
                    certs.push(c);
                }
                Err(Error::NotInClass { model, .. }) => {
                    assert!(!in_class(&g), "rejected a member {:?}", g.edges().collect::<Vec<_>>());
                    assert!(model.is_some_and(|m| oracle::model_is_valid(&m)));
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
    certs
}

fn audit(host: &HostDescription, certs: &[EmbeddingCertificate], pad: usize, free: impl Fn(&Graph) -> bool) {
    let window = materialize(host, pad);
    assert!(free(&window));
    for c in certs {
        assert!(c.verify_against(&window));
    }
    let report = verify_host(host, pad).unwrap();
    assert!(report.is_free(), "{report:?}");
}

#[test]
fn cycle_host_absorbs_every_small_member() {
    let forbid_c4 = |g: &Graph| circumference(g) < 4;
    for backend in [Backend::Adaptive, Backend::Catalog] {
        let mut host = build_host(&FamilySpec::Cycle { n: 4 }, backend).unwrap();
        let certs = absorb(&mut host, forbid_c4, 6);
        assert_eq!(certs.len(), 30);
        audit(&host, &certs, 400, forbid_c4);
    }
}

#[test]
fn wheel_host_absorbs_every_small_member() {
    let mut host = build_host(&FamilySpec::Wheel { k: 3 }, Backend::Adaptive).unwrap();
    let certs = absorb(&mut host, is_k4_minor_free, 6);
    assert_eq!(certs.len(), 80);
    audit(&host, &certs, 800, is_k4_minor_free);
}

#[test]
fn unsupported_classes_are_refused() {
    assert!(build_host(&FamilySpec::Complete { n: 5 }, Backend::Adaptive).is_err());
}
