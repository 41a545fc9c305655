//! M/M/1 steady-state measures and the network delay sum over channels.

use thiserror::Error;

use crate::topology::{NodeAttributes, Topology};

#[derive(Debug, Error, PartialEq)]
pub enum QueueError {
    #[error("unstable queue: arrival rate {lambda} >= service rate {service_rate}")]
    Unstable { lambda: f64, service_rate: f64 },
    #[error("unstable channel {channel}: arrival rate {lambda} >= service rate {service_rate}")]
    UnstableChannel { channel: usize, lambda: f64, service_rate: f64 },
    #[error("total external traffic is zero")]
    ZeroExternalTraffic,
    #[error("expected {expected} channel flows, got {got}")]
    FlowCount { expected: usize, got: usize },
    #[error("invalid queue parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueState {
    /// Traffic intensity `lambda / (mu * capacity)`.
    pub rho: f64,
    /// Expected number in system, `rho / (1 - rho)`.
    pub mean_jobs: f64,
    /// Expected sojourn time, `1 / (mu * capacity - lambda)`.
    pub mean_delay_s: f64,
}

pub fn mm1_state(lambda: f64, mu: f64, capacity: f64) -> Result<QueueState, QueueError> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(QueueError::InvalidParameter("arrival rate must be finite and nonnegative"));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(QueueError::InvalidParameter("service rate must be finite and positive"));
    }
    if !(capacity.is_finite() && capacity > 0.0) {
        return Err(QueueError::InvalidParameter("capacity must be finite and positive"));
    }
    let service_rate = mu * capacity;
    if lambda >= service_rate {
        return Err(QueueError::Unstable { lambda, service_rate });
    }
    let rho = lambda / service_rate;
    // 1 - rho taken as (s - lambda) / s keeps precision near saturation.
    let idle = (service_rate - lambda) / service_rate;
    Ok(QueueState {
        rho,
        mean_jobs: rho / idle,
        mean_delay_s: 1.0 / (service_rate - lambda),
    })
}

/// Queue state of a node from its own attributes.
pub fn node_queue(attrs: &NodeAttributes) -> Result<QueueState, QueueError> {
    mm1_state(attrs.arrival_rate_lambda, attrs.service_rate_mu, attrs.capacity)
}

/// Traffic over available bandwidth, clamped to `[0, 1]`.
pub fn congestion_score(attrs: &NodeAttributes) -> f64 {
    (attrs.current_traffic / attrs.bandwidth_mbps).clamp(0.0, 1.0)
}

/// One channel of the delay sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub lambda: f64,
    /// Effective service rate `mu * C_i`.
    pub service_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelTerm {
    pub index: usize,
    pub lambda: f64,
    pub service_rate: f64,
    /// `(lambda / gamma) / (service_rate - lambda)`.
    pub term: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelayBreakdown {
    pub total_delay_s: f64,
    pub per_channel: Vec<ChannelTerm>,
    pub gamma_total: f64,
}

/// Mean network delay `sum_i (lambda_i / gamma) / (mu C_i - lambda_i)`.
pub fn channel_delay(channels: &[Channel], gamma_total: f64) -> Result<DelayBreakdown, QueueError> {
    if !(gamma_total.is_finite() && gamma_total > 0.0) {
        return Err(QueueError::ZeroExternalTraffic);
    }
    let mut per_channel = Vec::with_capacity(channels.len());
    for (index, ch) in channels.iter().enumerate() {
        if !(ch.lambda.is_finite() && ch.lambda >= 0.0) {
            return Err(QueueError::InvalidParameter("channel flow must be finite and nonnegative"));
        }
        if ch.lambda >= ch.service_rate {
            return Err(QueueError::UnstableChannel {
                channel: index,
                lambda: ch.lambda,
                service_rate: ch.service_rate,
            });
        }
        per_channel.push(ChannelTerm {
            index,
            lambda: ch.lambda,
            service_rate: ch.service_rate,
            term: (ch.lambda / gamma_total) / (ch.service_rate - ch.lambda),
        });
    }
    let total_delay_s = per_channel.iter().map(|t| t.term).sum();
    Ok(DelayBreakdown { total_delay_s, per_channel, gamma_total })
}

/// Network delay over every directed link of `topology`. `flows[i]` is the
/// message rate on `topology.links()[i]`; a link is served at `mu * C` of
/// the node that transmits onto it.
pub fn network_delay(topology: &Topology, flows: &[f64]) -> Result<DelayBreakdown, QueueError> {
    let links = topology.links();
    if flows.len() != links.len() {
        return Err(QueueError::FlowCount { expected: links.len(), got: flows.len() });
    }
    let channels: Vec<Channel> = links
        .iter()
        .zip(flows)
        .map(|(link, &lambda)| {
            let tx = &topology.nodes()[link.from.index()];
            Channel { lambda, service_rate: tx.service_rate_mu * tx.capacity }
        })
        .collect();
    channel_delay(&channels, topology.gamma_total())
}
