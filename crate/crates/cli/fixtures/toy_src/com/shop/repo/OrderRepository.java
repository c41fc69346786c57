package com.shop.repo;

import java.util.ArrayList;
import java.util.Collection;
import java.util.List;
import com.shop.model.Order;

public class OrderRepository implements Repository<Order> {
    private final List<Order> orders = new ArrayList<>();

    public void save(Order order) {
        orders.add(order);
    }

    @Override
    public Collection<Order> all() {
        return orders;
    }
}
