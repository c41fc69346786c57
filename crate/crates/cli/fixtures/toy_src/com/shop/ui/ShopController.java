package com.shop.ui;

import java.util.*;
import com.shop.service.OrderService;
import com.shop.service.CartService;
import com.shop.model.Product;

public class ShopController {
    private final OrderService orders = new OrderService();
    private final CartService cart = new CartService();

    public void run() {
        List<Product> picks = new ArrayList<>();
        // "import com.shop.repo.OrderRepository;" in a comment is ignored
        picks.forEach(cart::add);
        orders.checkout(cart);
    }
}
